#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mema/automata.hpp"

namespace mema {

/// One designated key letter per variable. Keys are pairwise distinct; a
/// variable that starts nonempty contributes one of its own letters, an
/// initially empty variable gets a generated letter absent from the whole
/// initial memory.
struct KeyAssignment {
    std::vector<std::pair<VariableId, Letter>> keys; // follows declaration order
    Letter key_for(const VariableId& v) const;
};

/// Node of the finite abstraction: control state plus the set of variables
/// whose key is currently stored (bit i = i-th declared variable).
struct AbstractState {
    int state = 0;
    std::uint32_t keys_present = 0;

    bool operator==(const AbstractState&) const = default;
};

enum class FsmLabel {
    Key,      // consumes the key of some variable (read, or first write)
    TokenEps, // write into an already keyed variable / any-letter step: once-only token
    ResetEps, // non-observable reset
};

struct FsmEdge {
    FsmLabel label = FsmLabel::TokenEps;
    int transition = -1;
    std::optional<Letter> key; // present iff label == Key
    AbstractState to;
};

/// Canonical automaton: same structure, initial memory shrunk to one key per
/// nonempty variable. Its language is included in the original's and is empty
/// iff the original's is.
std::pair<NuAutomaton, KeyAssignment> canonicalize(const NuAutomaton& a);

/// Enabled outgoing edges of the abstraction at `s`, evaluated on the fly
/// (the finite machine is never materialized).
std::vector<FsmEdge> fsm_successors(const NuAutomaton& a, const KeyAssignment& keys,
                                    AbstractState s);

struct EmptinessVerdict {
    bool nonempty = false;
    std::optional<Word> witness; // accepted by the original automaton
    long explored = 0;           // distinct abstract states, <= |Q| * 2^|V|
};

/// Breadth-first reachability over the abstraction; NonEmpty verdicts carry a
/// witness word reconstructed from the path (keys verbatim, one globally
/// fresh token per token edge) and checked against decide_membership.
EmptinessVerdict decide_nonempty(const NuAutomaton& a);

/// Level-synchronous OpenMP variant; same verdict, witness may differ.
EmptinessVerdict decide_nonempty_parallel(const NuAutomaton& a);

/// One-sided randomized walk: true only when an accepting abstract state was
/// reached (nonemptiness certain); false proves nothing. Each restart walks
/// uniformly over enabled edges until acceptance, a dead end, or
/// |transitions| * 2^|V| steps.
bool decide_nonempty_randomized(const NuAutomaton& a, std::uint64_t seed, int max_restarts);

/// Same walk, returning the accepted word assembled along a successful run.
std::optional<Word> decide_nonempty_randomized_witness(const NuAutomaton& a, std::uint64_t seed,
                                                       int max_restarts);

} // namespace mema
