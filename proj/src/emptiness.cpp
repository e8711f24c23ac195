#include "mema/emptiness.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "mema/errors.hpp"
#include "mema/membership.hpp"

namespace mema {

namespace {

constexpr int kMaxVariables = 30; // keys_present bitmask width

int variable_bit(const NuAutomaton& a, const VariableId& v) {
    for (int i = 0; i < int(a.variables.size()); ++i)
        if (a.variables[i] == v) return i;
    throw UsageError("variable " + v.name + " not declared");
}

std::uint64_t pack(AbstractState s) {
    return (std::uint64_t(s.state) << kMaxVariables) | s.keys_present;
}

void check_size(const NuAutomaton& a) {
    if (int(a.variables.size()) > kMaxVariables)
        throw UsageError("non-emptiness supports at most " + std::to_string(kMaxVariables) +
                         " variables");
}

AbstractState initial_abstract(const NuAutomaton& a) {
    AbstractState s{a.initial, 0};
    for (int i = 0; i < int(a.variables.size()); ++i)
        if (!a.initial_memory.at(a.variables[i]).empty()) s.keys_present |= 1u << i;
    return s;
}

// per-transition lookups so the abstraction walks integers only
struct FsmTables {
    detail::TransitionIndex idx;
    std::vector<int> var_bit;               // Read/Write transitions
    std::vector<std::uint32_t> reset_mask;  // Reset transitions

    FsmTables(const NuAutomaton& a) : idx(detail::index_transitions(a)) {
        var_bit.assign(a.transitions.size(), -1);
        reset_mask.assign(a.transitions.size(), 0);
        for (int ti = 0; ti < int(a.transitions.size()); ++ti) {
            const NuTransition& t = a.transitions[ti];
            if (t.kind == NuTransition::Kind::Read || t.kind == NuTransition::Kind::Write)
                var_bit[ti] = variable_bit(a, t.var);
            if (t.kind == NuTransition::Kind::Reset)
                for (const auto& v : t.reset) reset_mask[ti] |= 1u << variable_bit(a, v);
        }
    }
};

template <class OnEdge>
void for_each_fsm_edge(const NuAutomaton& a, const FsmTables& tables, const KeyAssignment& keys,
                       AbstractState s, OnEdge on_edge) {
    for (int ti : tables.idx.out[s.state]) {
        const NuTransition& t = a.transitions[ti];
        switch (t.kind) {
            case NuTransition::Kind::Read:
                if (s.keys_present & (1u << tables.var_bit[ti]))
                    on_edge(FsmEdge{FsmLabel::Key, ti, keys.keys[tables.var_bit[ti]].second,
                                    {t.to, s.keys_present}});
                break;
            case NuTransition::Kind::Write: {
                std::uint32_t bit = 1u << tables.var_bit[ti];
                if (s.keys_present & bit)
                    on_edge(FsmEdge{FsmLabel::TokenEps, ti, std::nullopt,
                                    {t.to, s.keys_present}});
                else
                    on_edge(FsmEdge{FsmLabel::Key, ti, keys.keys[tables.var_bit[ti]].second,
                                    {t.to, s.keys_present | bit}});
                break;
            }
            case NuTransition::Kind::Any:
                on_edge(FsmEdge{FsmLabel::TokenEps, ti, std::nullopt, {t.to, s.keys_present}});
                break;
            case NuTransition::Kind::Reset:
                on_edge(FsmEdge{FsmLabel::ResetEps, ti, std::nullopt,
                                {t.to, s.keys_present & ~tables.reset_mask[ti]}});
                break;
        }
    }
}

struct PathEdge {
    std::uint64_t parent = 0;
    FsmLabel label = FsmLabel::TokenEps;
    std::optional<Letter> key;
    bool root = false;
};

Word rebuild_witness(const NuAutomaton& a, const KeyAssignment& keys,
                     const std::unordered_map<std::uint64_t, PathEdge>& parents,
                     std::uint64_t goal) {
    std::vector<const PathEdge*> path;
    std::uint64_t at = goal;
    while (true) {
        const PathEdge& e = parents.at(at);
        if (e.root) break;
        path.push_back(&e);
        at = e.parent;
    }
    std::reverse(path.begin(), path.end());

    // tokens must be fresh for the replay on the original automaton: avoid
    // keys, every initial-memory letter, and all letters used so far
    LetterSet avoid;
    for (const auto& [v, k] : keys.keys) avoid.insert(k);
    for (const auto& [v, letters] : a.initial_memory.slots())
        for (Letter u : letters) avoid.insert(u);

    Word w;
    for (const PathEdge* e : path) {
        switch (e->label) {
            case FsmLabel::Key:
                w.push_back(*e->key);
                break;
            case FsmLabel::TokenEps: {
                Letter token = fresh_letter(avoid);
                avoid.insert(token);
                w.push_back(token);
                break;
            }
            case FsmLabel::ResetEps:
                break;
        }
    }
    return w;
}

void check_witness(const NuAutomaton& a, const Word& w) {
    if (!decide_membership(a, w).accepted)
        throw std::logic_error("internal error: non-emptiness witness rejected by the automaton");
}

} // namespace

Letter KeyAssignment::key_for(const VariableId& v) const {
    for (const auto& [var, key] : keys)
        if (var == v) return key;
    throw UsageError("no key for variable " + v.name);
}

std::pair<NuAutomaton, KeyAssignment> canonicalize(const NuAutomaton& a) {
    require_valid(a);
    check_size(a);
    LetterSet initial_letters;
    for (const auto& [v, letters] : a.initial_memory.slots())
        for (Letter u : letters) initial_letters.insert(u);

    KeyAssignment keys;
    LetterSet used = initial_letters;
    unsigned long counter = 0;
    for (const VariableId& v : a.variables) {
        const LetterSet& m0 = a.initial_memory.at(v);
        if (!m0.empty()) {
            keys.keys.push_back({v, *m0.begin()}); // smallest letter of the set
        } else {
            Letter key = Letter::intern("κ" + std::to_string(counter++));
            while (used.contains(key)) key = Letter::intern("κ" + std::to_string(counter++));
            used.insert(key);
            keys.keys.push_back({v, key});
        }
    }

    NuAutomaton canonical = a;
    for (const auto& [v, key] : keys.keys) {
        LetterSet slot;
        if (!a.initial_memory.at(v).empty()) slot.insert(key);
        canonical.initial_memory.assign(v, std::move(slot));
    }
    return {std::move(canonical), std::move(keys)};
}

std::vector<FsmEdge> fsm_successors(const NuAutomaton& a, const KeyAssignment& keys,
                                    AbstractState s) {
    check_size(a);
    FsmTables tables(a);
    std::vector<FsmEdge> out;
    for_each_fsm_edge(a, tables, keys, s, [&](FsmEdge e) { out.push_back(std::move(e)); });
    return out;
}

EmptinessVerdict decide_nonempty(const NuAutomaton& a) {
    KeyAssignment keys = canonicalize(a).second;
    FsmTables tables(a);

    std::unordered_map<std::uint64_t, PathEdge> visited;
    std::vector<AbstractState> queue;
    AbstractState start = initial_abstract(a);
    visited.emplace(pack(start), PathEdge{0, FsmLabel::TokenEps, std::nullopt, true});
    queue.push_back(start);

    std::optional<std::uint64_t> goal;
    if (a.is_final(start.state)) goal = pack(start);
    for (std::size_t head = 0; head < queue.size() && !goal; ++head) {
        AbstractState cur = queue[head];
        for_each_fsm_edge(a, tables, keys, cur, [&](const FsmEdge& e) {
            if (goal) return;
            std::uint64_t id = pack(e.to);
            if (!visited.emplace(id, PathEdge{pack(cur), e.label, e.key, false}).second)
                return;
            queue.push_back(e.to);
            if (a.is_final(e.to.state)) goal = id;
        });
    }

    EmptinessVerdict verdict;
    verdict.explored = long(visited.size());
    if (goal) {
        verdict.nonempty = true;
        verdict.witness = rebuild_witness(a, keys, visited, *goal);
        check_witness(a, *verdict.witness);
    }
    return verdict;
}

EmptinessVerdict decide_nonempty_parallel(const NuAutomaton& a) {
    KeyAssignment keys = canonicalize(a).second;
    FsmTables tables(a);

    std::unordered_map<std::uint64_t, PathEdge> visited;
    std::vector<AbstractState> frontier{initial_abstract(a)};
    visited.emplace(pack(frontier[0]), PathEdge{0, FsmLabel::TokenEps, std::nullopt, true});

    std::optional<std::uint64_t> goal;
    if (a.is_final(frontier[0].state)) goal = pack(frontier[0]);

    while (!frontier.empty() && !goal) {
        // expand the whole level in parallel, merge serially
        std::vector<std::vector<std::pair<AbstractState, PathEdge>>> buckets(frontier.size());
#pragma omp parallel for schedule(dynamic, 64)
        for (long i = 0; i < long(frontier.size()); ++i) {
            AbstractState cur = frontier[i];
            for_each_fsm_edge(a, tables, keys, cur, [&](const FsmEdge& e) {
                buckets[i].push_back({e.to, PathEdge{pack(cur), e.label, e.key, false}});
            });
        }
        std::vector<AbstractState> next;
        for (auto& bucket : buckets)
            for (auto& [to, edge] : bucket) {
                std::uint64_t id = pack(to);
                if (!visited.emplace(id, edge).second) continue;
                next.push_back(to);
                if (!goal && a.is_final(to.state)) goal = id;
            }
        frontier = std::move(next);
    }

    EmptinessVerdict verdict;
    verdict.explored = long(visited.size());
    if (goal) {
        verdict.nonempty = true;
        verdict.witness = rebuild_witness(a, keys, visited, *goal);
        check_witness(a, *verdict.witness);
    }
    return verdict;
}

std::optional<Word> decide_nonempty_randomized_witness(const NuAutomaton& a, std::uint64_t seed,
                                                       int max_restarts) {
    KeyAssignment keys = canonicalize(a).second;
    FsmTables tables(a);

    LetterSet base_avoid;
    for (const auto& [v, k] : keys.keys) base_avoid.insert(k);
    for (const auto& [v, letters] : a.initial_memory.slots())
        for (Letter u : letters) base_avoid.insert(u);

    long max_steps = long(a.transitions.size()) << a.variables.size();
    std::mt19937_64 rng(seed);
    std::vector<FsmEdge> enabled;
    for (int restart = 0; restart < max_restarts; ++restart) {
        AbstractState cur = initial_abstract(a);
        Word w;
        LetterSet avoid = base_avoid;
        if (a.is_final(cur.state)) return w;
        for (long step = 0; step < max_steps; ++step) {
            enabled.clear();
            for_each_fsm_edge(a, tables, keys, cur,
                              [&](FsmEdge e) { enabled.push_back(std::move(e)); });
            if (enabled.empty()) break; // dead end (e.g. only blocked reads)
            std::uniform_int_distribution<std::size_t> pick(0, enabled.size() - 1);
            const FsmEdge& e = enabled[pick(rng)];
            if (e.label == FsmLabel::Key) {
                w.push_back(*e.key);
            } else if (e.label == FsmLabel::TokenEps) {
                Letter token = fresh_letter(avoid);
                avoid.insert(token);
                w.push_back(token);
            }
            cur = e.to;
            if (a.is_final(cur.state)) {
                check_witness(a, w);
                return w;
            }
        }
    }
    return std::nullopt;
}

bool decide_nonempty_randomized(const NuAutomaton& a, std::uint64_t seed, int max_restarts) {
    return decide_nonempty_randomized_witness(a, seed, max_restarts).has_value();
}

} // namespace mema
