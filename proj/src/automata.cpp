#include "mema/automata.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mema/errors.hpp"

namespace mema {

namespace {

template <class A>
bool is_final_impl(const A& a, int q) {
    return std::binary_search(a.finals.begin(), a.finals.end(), q);
}

template <class A>
int state_index_impl(const A& a, std::string_view name) {
    for (int i = 0; i < int(a.states.size()); ++i)
        if (a.states[i] == name) return i;
    return -1;
}

std::string show_var(const VariableId& v) {
    return v.name + "^" + std::to_string(v.layer);
}

struct Checker {
    std::vector<std::string> violations;

    void fail(std::string message) { violations.push_back(std::move(message)); }

    template <class A>
    void common(const A& a, const std::vector<VariableId>& vars) {
        std::set<std::string_view> names;
        for (const auto& s : a.states)
            if (!names.insert(s).second) fail("duplicate state name " + s);
        if (a.states.empty()) fail("automaton has no states");
        if (a.initial < 0 || a.initial >= int(a.states.size()))
            fail("initial state index " + std::to_string(a.initial) + " out of range");
        for (int f : a.finals)
            if (f < 0 || f >= int(a.states.size()))
                fail("final state index " + std::to_string(f) + " out of range");
        std::set<std::string_view> var_names;
        for (const auto& v : vars)
            if (!var_names.insert(v.name).second)
                fail("duplicate variable name " + v.name);
        // initial memory domain must be exactly the variable set
        for (const auto& v : vars)
            if (!a.initial_memory.has(v))
                fail("initial memory misses variable " + show_var(v));
        for (const auto& [v, letters] : a.initial_memory.slots())
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                fail("initial memory names undeclared variable " + show_var(v));
    }

    template <class A>
    bool state_ok(const A& a, int q, int transition) {
        if (q >= 0 && q < int(a.states.size())) return true;
        fail("transition " + std::to_string(transition) + ": state index " +
             std::to_string(q) + " out of range");
        return false;
    }

    void var_declared(const std::vector<VariableId>& vars, const VariableId& v,
                      int transition) {
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            fail("transition " + std::to_string(transition) + ": undeclared variable " +
                 show_var(v));
    }
};

// Distinct variables restricted to `layer` (0 = all layers) must share no letter.
void check_disjoint(Checker& ck, const MemoryContext& m, int layer, const char* what) {
    std::vector<std::pair<VariableId, Letter>> seen;
    for (const auto& [v, letters] : m.slots()) {
        if (layer != 0 && v.layer != layer) continue;
        for (Letter u : letters) {
            for (const auto& [v0, u0] : seen)
                if (u0 == u)
                    ck.fail(std::string(what) + ": variables " + show_var(v0) + " and " +
                            show_var(v) + " share letter " + u.text());
            seen.push_back({v, u});
        }
    }
}

} // namespace

bool NuAutomaton::is_final(int q) const { return is_final_impl(*this, q); }
bool Lama::is_final(int q) const { return is_final_impl(*this, q); }
bool Hra::is_final(int q) const { return is_final_impl(*this, q); }
int NuAutomaton::state_index(std::string_view name) const { return state_index_impl(*this, name); }
int Lama::state_index(std::string_view name) const { return state_index_impl(*this, name); }
int Hra::state_index(std::string_view name) const { return state_index_impl(*this, name); }

std::string_view formalism_name(const Automaton& a) {
    switch (a.index()) {
        case 0: return "nu";
        case 1: return "lama";
        default: return "hra";
    }
}

std::vector<std::string> validate(const NuAutomaton& a) {
    Checker ck;
    ck.common(a, a.variables);
    for (const auto& v : a.variables)
        if (v.layer != 1)
            ck.fail("nu-automaton variable " + show_var(v) + " must be on layer 1");
    check_disjoint(ck, a.initial_memory, 0, "initial memory");
    for (int i = 0; i < int(a.transitions.size()); ++i) {
        const NuTransition& t = a.transitions[i];
        if (!ck.state_ok(a, t.from, i) || !ck.state_ok(a, t.to, i)) continue;
        if (t.kind == NuTransition::Kind::Read || t.kind == NuTransition::Kind::Write)
            ck.var_declared(a.variables, t.var, i);
        if (t.kind == NuTransition::Kind::Reset)
            for (const auto& v : t.reset) ck.var_declared(a.variables, v, i);
    }
    return ck.violations;
}

std::vector<std::string> validate(const Lama& a) {
    Checker ck;
    ck.common(a, a.variables);
    if (a.layers < 1) ck.fail("layer count must be at least 1");
    for (const auto& v : a.variables)
        if (v.layer < 1 || v.layer > a.layers)
            ck.fail("variable " + show_var(v) + " outside layers [1," +
                    std::to_string(a.layers) + "]");
    for (int l = 1; l <= a.layers; ++l)
        if (std::any_of(a.variables.begin(), a.variables.end(),
                        [l](const VariableId& v) { return v.layer == l; }))
            check_disjoint(ck, a.initial_memory, l, "initial memory");
    for (int i = 0; i < int(a.transitions.size()); ++i) {
        const LamaTransition& t = a.transitions[i];
        if (!ck.state_ok(a, t.from, i) || !ck.state_ok(a, t.to, i)) continue;
        if (t.kind == LamaTransition::Kind::Obs) {
            if (int(t.alpha.size()) != a.layers) {
                ck.fail("transition " + std::to_string(i) + ": alpha must cover all " +
                        std::to_string(a.layers) + " layers");
                continue;
            }
            for (int l = 1; l <= a.layers; ++l) {
                const LayerAction& action = t.alpha[l - 1];
                if (!action) continue;
                ck.var_declared(a.variables, action->first, i);
                if (action->first.layer != l)
                    ck.fail("transition " + std::to_string(i) + ": alpha layer " +
                            std::to_string(l) + " names variable " +
                            show_var(action->first) + " of another layer");
            }
        } else {
            for (const auto& v : t.reset) ck.var_declared(a.variables, v, i);
        }
    }
    return ck.violations;
}

std::vector<std::string> validate(const Hra& a) {
    Checker ck;
    ck.common(a, a.histories);
    for (const auto& h : a.histories)
        if (h.layer != 1)
            ck.fail("history " + show_var(h) + " must be on layer 1");
    for (int i = 0; i < int(a.transitions.size()); ++i) {
        const HraTransition& t = a.transitions[i];
        if (!ck.state_ok(a, t.from, i) || !ck.state_ok(a, t.to, i)) continue;
        for (const auto& h : t.read) ck.var_declared(a.histories, h, i);
        for (const auto& h : t.write) ck.var_declared(a.histories, h, i);
        for (const auto& h : t.reset) ck.var_declared(a.histories, h, i);
    }
    return ck.violations;
}

std::vector<std::string> validate(const Automaton& a) {
    return std::visit([](const auto& x) { return validate(x); }, a);
}

void require_valid(const Automaton& a) {
    std::visit([](const auto& x) { require_valid(x); }, a);
}

Configuration initial_configuration(const NuAutomaton& a) { return {a.initial, a.initial_memory}; }
Configuration initial_configuration(const Lama& a) { return {a.initial, a.initial_memory}; }
Configuration initial_configuration(const Hra& a) { return {a.initial, a.initial_memory}; }

namespace detail {

std::optional<Configuration> try_obs(const NuAutomaton&, const NuTransition& t,
                                     const Configuration& c, Letter u) {
    switch (t.kind) {
        case NuTransition::Kind::Read:
            if (!c.memory.at(t.var).contains(u)) return std::nullopt;
            return Configuration{t.to, c.memory};
        case NuTransition::Kind::Write: {
            // freshness is global: u must be stored in no variable at all
            for (const auto& [v, letters] : c.memory.slots())
                if (letters.contains(u)) return std::nullopt;
            Configuration next{t.to, c.memory};
            next.memory.add(t.var, u);
            return next;
        }
        case NuTransition::Kind::Any:
            return Configuration{t.to, c.memory};
        default:
            return std::nullopt;
    }
}

std::optional<Configuration> try_obs(const Lama&, const LamaTransition& t,
                                     const Configuration& c, Letter u) {
    // all per-layer conditions are checked against the pre-step memory,
    // then all writes applied atomically
    for (const LayerAction& action : t.alpha) {
        if (!action) continue;
        const auto& [v, mode] = *action;
        if (mode == Mode::Read) {
            if (!c.memory.at(v).contains(u)) return std::nullopt;
        } else {
            for (const auto& [v1, letters] : c.memory.slots())
                if (v1.layer == v.layer && letters.contains(u)) return std::nullopt;
        }
    }
    Configuration next{t.to, c.memory};
    for (const LayerAction& action : t.alpha)
        if (action && action->second == Mode::Write) next.memory.add(action->first, u);
    return next;
}

std::optional<Configuration> try_obs(const Hra& a, const HraTransition& t,
                                     const Configuration& c, Letter u) {
    // enabled iff u sits in exactly the histories of the read set
    for (const auto& h : a.histories) {
        bool wanted = std::find(t.read.begin(), t.read.end(), h) != t.read.end();
        if (c.memory.at(h).contains(u) != wanted) return std::nullopt;
    }
    Configuration next{t.to, c.memory};
    for (const auto& h : a.histories) {
        if (std::find(t.write.begin(), t.write.end(), h) != t.write.end())
            next.memory.add(h, u);
        else
            next.memory.remove(h, u);
    }
    return next;
}

} // namespace detail

namespace {

template <class A, class T>
void require_step(const A& a, const Configuration& c, const T& t, bool observable) {
    if (t.observable() != observable)
        throw UsageError(observable ? "step_obs requires an observable transition"
                                    : "step_eps requires a non-observable transition");
    if (t.from != c.state)
        throw UsageError("transition source " + a.states.at(t.from) +
                         " does not match configuration state " + a.states.at(c.state));
}

template <class A>
std::vector<Configuration> successors_impl(const A& a, const Configuration& c,
                                           const std::optional<Letter>& input) {
    std::vector<Configuration> out;
    for (const auto& t : a.transitions) {
        if (t.from != c.state) continue;
        if (input) {
            if (!t.observable()) continue;
            if (auto next = detail::try_obs(a, t, c, *input)) out.push_back(std::move(*next));
        } else {
            if (t.observable()) continue;
            out.push_back(detail::apply_eps(c, t));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::optional<Configuration> step_obs(const NuAutomaton& a, const Configuration& c,
                                      const NuTransition& t, Letter u) {
    require_step(a, c, t, true);
    return detail::try_obs(a, t, c, u);
}

std::optional<Configuration> step_obs(const Lama& a, const Configuration& c,
                                      const LamaTransition& t, Letter u) {
    require_step(a, c, t, true);
    return detail::try_obs(a, t, c, u);
}

std::optional<Configuration> step_obs(const Hra& a, const Configuration& c,
                                      const HraTransition& t, Letter u) {
    require_step(a, c, t, true);
    return detail::try_obs(a, t, c, u);
}

Configuration step_eps(const NuAutomaton& a, const Configuration& c, const NuTransition& t) {
    require_step(a, c, t, false);
    return detail::apply_eps(c, t);
}

Configuration step_eps(const Lama& a, const Configuration& c, const LamaTransition& t) {
    require_step(a, c, t, false);
    return detail::apply_eps(c, t);
}

Configuration step_eps(const Hra& a, const Configuration& c, const HraTransition& t) {
    require_step(a, c, t, false);
    return detail::apply_eps(c, t);
}

std::vector<Configuration> successors(const NuAutomaton& a, const Configuration& c,
                                      const std::optional<Letter>& input) {
    return successors_impl(a, c, input);
}

std::vector<Configuration> successors(const Lama& a, const Configuration& c,
                                      const std::optional<Letter>& input) {
    return successors_impl(a, c, input);
}

std::vector<Configuration> successors(const Hra& a, const Configuration& c,
                                      const std::optional<Letter>& input) {
    return successors_impl(a, c, input);
}

std::vector<Configuration> successors(const Automaton& a, const Configuration& c,
                                      const std::optional<Letter>& input) {
    return std::visit([&](const auto& x) { return successors(x, c, input); }, a);
}

} // namespace mema
