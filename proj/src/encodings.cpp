#include "mema/encodings.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "mema/errors.hpp"

namespace mema {

namespace {

void reject_separator(Letter u, char sep, const char* where) {
    if (u.text().find(sep) != std::string::npos)
        throw FormatError(std::string(where) + ": letter \"" + u.text() +
                          "\" contains the reserved separator '" + sep + "'");
}

Letter component(Letter u, char sep, int index) {
    return Letter::intern(u.text() + sep + std::to_string(index));
}

std::string unique_name(std::string base, const std::set<std::string>& taken) {
    while (taken.count(base)) base += "'";
    return base;
}

} // namespace

Word xi_rename(const Word& w, int layers) {
    if (layers < 1) throw UsageError("xi renaming needs at least one layer");
    Word out;
    out.reserve(w.size() * layers);
    for (Letter u : w) {
        reject_separator(u, '~', "xi renaming");
        for (int l = 1; l <= layers; ++l) out.push_back(component(u, '~', l));
    }
    return out;
}

NuAutomaton lama_to_nu(const Lama& a) {
    require_valid(a);
    NuAutomaton out;
    out.states = a.states;
    out.initial = a.initial;
    out.finals = a.finals;
    for (const auto& v : a.variables) out.variables.push_back({v.name, 1});

    out.initial_memory = MemoryContext::over(out.variables);
    for (const auto& [v, letters] : a.initial_memory.slots()) {
        LetterSet renamed;
        for (Letter u : letters) {
            reject_separator(u, '~', "memory renaming");
            renamed.insert(component(u, '~', v.layer));
        }
        out.initial_memory.assign({v.name, 1}, std::move(renamed));
    }

    std::set<std::string> taken(a.states.begin(), a.states.end());
    for (int ti = 0; ti < int(a.transitions.size()); ++ti) {
        const LamaTransition& t = a.transitions[ti];
        if (t.kind == LamaTransition::Kind::Reset) {
            NuTransition r;
            r.kind = NuTransition::Kind::Reset;
            r.from = t.from;
            r.to = t.to;
            for (const auto& v : t.reset) r.reset.push_back({v.name, 1});
            std::sort(r.reset.begin(), r.reset.end());
            out.transitions.push_back(std::move(r));
            continue;
        }
        // chain of one step per layer through fresh intermediate states
        int prev = t.from;
        for (int l = 1; l <= a.layers; ++l) {
            int next;
            if (l == a.layers) {
                next = t.to;
            } else {
                std::string name = unique_name(
                    a.states[t.from] + "~d" + std::to_string(ti) + "~" + std::to_string(l), taken);
                taken.insert(name);
                out.states.push_back(name);
                next = int(out.states.size()) - 1;
            }
            NuTransition step;
            step.from = prev;
            step.to = next;
            const LayerAction& action = t.alpha[l - 1];
            if (!action) {
                step.kind = NuTransition::Kind::Any;
            } else {
                step.kind = action->second == Mode::Read ? NuTransition::Kind::Read
                                                         : NuTransition::Kind::Write;
                step.var = {action->first.name, 1};
            }
            out.transitions.push_back(std::move(step));
            prev = next;
        }
    }
    return out;
}

Lama nu_to_lama(const NuAutomaton& a) {
    require_valid(a);
    Lama out;
    out.states = a.states;
    out.initial = a.initial;
    out.finals = a.finals;
    out.layers = 1;
    out.variables = a.variables;
    out.initial_memory = a.initial_memory;
    for (const auto& t : a.transitions) {
        LamaTransition step;
        step.from = t.from;
        step.to = t.to;
        switch (t.kind) {
            case NuTransition::Kind::Read:
                step.alpha = {LayerAction{{t.var, Mode::Read}}};
                break;
            case NuTransition::Kind::Write:
                step.alpha = {LayerAction{{t.var, Mode::Write}}};
                break;
            case NuTransition::Kind::Any:
                step.alpha = {std::nullopt};
                break;
            case NuTransition::Kind::Reset:
                step.kind = LamaTransition::Kind::Reset;
                step.reset = t.reset;
                break;
        }
        out.transitions.push_back(std::move(step));
    }
    return out;
}

Word zeta_rename(const Word& w) {
    Word out;
    out.reserve(w.size() * 2);
    std::map<Letter, int> occurrences;
    for (Letter u : w) {
        reject_separator(u, '#', "zeta renaming");
        int j = ++occurrences[u];
        out.push_back(component(u, '#', j - 1));
        out.push_back(component(u, '#', j));
    }
    return out;
}

Lama hra_to_lama(const Hra& a) {
    require_valid(a);
    int n = int(a.histories.size());
    Lama out;
    out.states = a.states;
    out.initial = a.initial;
    out.finals = a.finals;
    out.layers = n;

    std::set<std::string> var_names;
    for (const auto& h : a.histories) var_names.insert(h.name);
    std::vector<VariableId> history_var(n), scratch_var(n);
    for (int l = 1; l <= n; ++l) {
        history_var[l - 1] = {a.histories[l - 1].name, l};
        std::string scratch = unique_name("omega" + std::to_string(l), var_names);
        var_names.insert(scratch);
        scratch_var[l - 1] = {scratch, l};
    }
    out.variables = history_var;
    out.variables.insert(out.variables.end(), scratch_var.begin(), scratch_var.end());

    out.initial_memory = MemoryContext::over(out.variables);
    for (int l = 1; l <= n; ++l) {
        LetterSet initial;
        for (Letter u : a.initial_memory.at(a.histories[l - 1])) {
            reject_separator(u, '#', "memory renaming");
            initial.insert(component(u, '#', 0));
        }
        out.initial_memory.assign(history_var[l - 1], std::move(initial));
    }

    auto in_set = [](const std::vector<VariableId>& set, const VariableId& h) {
        return std::find(set.begin(), set.end(), h) != set.end();
    };

    std::set<std::string> taken(a.states.begin(), a.states.end());
    for (int ti = 0; ti < int(a.transitions.size()); ++ti) {
        const HraTransition& t = a.transitions[ti];
        if (t.kind == HraTransition::Kind::Eps) {
            LamaTransition r;
            r.kind = LamaTransition::Kind::Reset;
            r.from = t.from;
            r.to = t.to;
            for (int l = 1; l <= n; ++l)
                if (in_set(t.reset, a.histories[l - 1])) r.reset.push_back(history_var[l - 1]);
            out.transitions.push_back(std::move(r));
            continue;
        }
        std::string mid_name =
            unique_name(a.states[t.from] + "~d" + std::to_string(ti), taken);
        taken.insert(mid_name);
        out.states.push_back(mid_name);
        int mid = int(out.states.size()) - 1;

        // guard step: read where the letter must be, write into scratch where
        // it must be absent (injectivity makes that the absence test)
        LamaTransition guard;
        guard.from = t.from;
        guard.to = mid;
        guard.alpha.resize(n);
        for (int l = 1; l <= n; ++l)
            guard.alpha[l - 1] = in_set(t.read, a.histories[l - 1])
                                     ? LayerAction{{history_var[l - 1], Mode::Read}}
                                     : LayerAction{{scratch_var[l - 1], Mode::Write}};
        out.transitions.push_back(std::move(guard));

        // relocation step: store the fresh second component where the letter
        // belongs afterwards
        LamaTransition reloc;
        reloc.from = mid;
        reloc.to = t.to;
        reloc.alpha.assign(n, std::nullopt);
        for (int l = 1; l <= n; ++l)
            if (in_set(t.write, a.histories[l - 1]))
                reloc.alpha[l - 1] = LayerAction{{history_var[l - 1], Mode::Write}};
        out.transitions.push_back(std::move(reloc));
    }
    return out;
}

bool is_well_formed(const MemoryContext& encoded, const Word& w, const MemoryContext& hra_memory,
                    std::span<const VariableId> histories) {
    std::map<Letter, int> occurrences;
    for (Letter u : w) ++occurrences[u];

    // letters whose components could witness a violation
    std::set<Letter> universe;
    for (Letter u : w) universe.insert(u);
    for (const auto& [h, letters] : hra_memory.slots())
        for (Letter u : letters) universe.insert(u);
    for (int l = 1; l <= int(histories.size()); ++l) {
        const VariableId hvar{histories[l - 1].name, l};
        if (!encoded.has(hvar))
            throw UsageError("encoded context misses variable " + hvar.name + "^" +
                             std::to_string(l));
        for (Letter enc : encoded.at(hvar)) {
            std::size_t cut = enc.text().rfind('#');
            if (cut != std::string::npos && cut > 0)
                universe.insert(Letter::intern(enc.text().substr(0, cut)));
        }
    }

    for (int l = 1; l <= int(histories.size()); ++l) {
        const LetterSet& enc = encoded.at({histories[l - 1].name, l});
        const LetterSet& hra = hra_memory.at(histories[l - 1]);
        for (Letter u : universe) {
            auto it = occurrences.find(u);
            Letter current = component(u, '#', it == occurrences.end() ? 0 : it->second);
            if (enc.contains(current) != hra.contains(u)) return false;
        }
    }
    return true;
}

} // namespace mema
