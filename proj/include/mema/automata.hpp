#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mema/memory.hpp"

namespace mema {

enum class Mode { Read, Write };

/// Observable transitions carry exactly one variable (Read/Write) or none
/// (Any); Reset is the non-observable kind.
struct NuTransition {
    enum class Kind { Read, Write, Any, Reset };
    Kind kind = Kind::Any;
    int from = 0;
    int to = 0;
    VariableId var;                // Read/Write only
    std::vector<VariableId> reset; // Reset only

    bool observable() const { return kind != Kind::Reset; }
};

/// Per-layer action of an observable n-LaMA transition: either (variable,
/// mode) on that layer or the any-letter placeholder (nullopt).
using LayerAction = std::optional<std::pair<VariableId, Mode>>;

struct LamaTransition {
    enum class Kind { Obs, Reset };
    Kind kind = Kind::Obs;
    int from = 0;
    int to = 0;
    std::vector<LayerAction> alpha; // Obs only; alpha[l-1] is the action on layer l
    std::vector<VariableId> reset;  // Reset only

    bool observable() const { return kind == Kind::Obs; }
};

struct HraTransition {
    enum class Kind { Obs, Eps };
    Kind kind = Kind::Obs;
    int from = 0;
    int to = 0;
    std::vector<VariableId> read;  // Obs: exact set of histories holding the letter
    std::vector<VariableId> write; // Obs: histories holding the letter afterwards
    std::vector<VariableId> reset; // Eps only

    bool observable() const { return kind == Kind::Obs; }
};

struct NuAutomaton {
    std::vector<std::string> states;
    int initial = 0;
    std::vector<int> finals; // sorted state indices
    std::vector<VariableId> variables; // all layer 1
    MemoryContext initial_memory;      // globally injective
    std::vector<NuTransition> transitions;

    bool is_final(int q) const;
    int state_index(std::string_view name) const; // -1 when absent
};

struct Lama {
    std::vector<std::string> states;
    int initial = 0;
    std::vector<int> finals;
    int layers = 1;
    std::vector<VariableId> variables; // layers in [1, layers]
    MemoryContext initial_memory;      // injective on every layer
    std::vector<LamaTransition> transitions;

    bool is_final(int q) const;
    int state_index(std::string_view name) const;
};

struct Hra {
    std::vector<std::string> states;
    int initial = 0;
    std::vector<int> finals;
    std::vector<VariableId> histories; // no injectivity constraint
    MemoryContext initial_memory;
    std::vector<HraTransition> transitions;

    bool is_final(int q) const;
    int state_index(std::string_view name) const;
};

using Automaton = std::variant<NuAutomaton, Lama, Hra>;

std::string_view formalism_name(const Automaton& a);

/// Empty iff every structural invariant holds; each violation names the
/// offending element. Violations are data, not errors.
std::vector<std::string> validate(const NuAutomaton& a);
std::vector<std::string> validate(const Lama& a);
std::vector<std::string> validate(const Hra& a);
std::vector<std::string> validate(const Automaton& a);

/// Throws UsageError when validate(a) is nonempty.
void require_valid(const Automaton& a);
template <class A>
void require_valid(const A& a) {
    if (auto v = validate(a); !v.empty())
        throw UsageError("invalid automaton: " + v.front());
}

Configuration initial_configuration(const NuAutomaton& a);
Configuration initial_configuration(const Lama& a);
Configuration initial_configuration(const Hra& a);

/// One observable step. nullopt when the transition is not enabled for `u`
/// from `c`; UsageError when the transition kind or source state mismatch.
std::optional<Configuration> step_obs(const NuAutomaton& a, const Configuration& c,
                                      const NuTransition& t, Letter u);
std::optional<Configuration> step_obs(const Lama& a, const Configuration& c,
                                      const LamaTransition& t, Letter u);
std::optional<Configuration> step_obs(const Hra& a, const Configuration& c,
                                      const HraTransition& t, Letter u);

/// Non-observable step: target state with the reset applied. Always defined.
Configuration step_eps(const NuAutomaton& a, const Configuration& c, const NuTransition& t);
Configuration step_eps(const Lama& a, const Configuration& c, const LamaTransition& t);
Configuration step_eps(const Hra& a, const Configuration& c, const HraTransition& t);

/// All configurations reachable by one enabled transition: observable ones
/// consuming `input` when it is a letter, non-observable ones when it is
/// nullopt. Result is sorted and duplicate-free.
std::vector<Configuration> successors(const NuAutomaton& a, const Configuration& c,
                                      const std::optional<Letter>& input);
std::vector<Configuration> successors(const Lama& a, const Configuration& c,
                                      const std::optional<Letter>& input);
std::vector<Configuration> successors(const Hra& a, const Configuration& c,
                                      const std::optional<Letter>& input);
std::vector<Configuration> successors(const Automaton& a, const Configuration& c,
                                      const std::optional<Letter>& input);

// Internal step application without the source/kind precondition checks;
// searches iterate transition indices directly.
namespace detail {

std::optional<Configuration> try_obs(const NuAutomaton& a, const NuTransition& t,
                                     const Configuration& c, Letter u);
std::optional<Configuration> try_obs(const Lama& a, const LamaTransition& t,
                                     const Configuration& c, Letter u);
std::optional<Configuration> try_obs(const Hra& a, const HraTransition& t,
                                     const Configuration& c, Letter u);

template <class T>
Configuration apply_eps(const Configuration& c, const T& t) {
    return {t.to, apply_reset(c.memory, t.reset)};
}

/// Transition indices grouped by source state.
struct TransitionIndex {
    std::vector<std::vector<int>> out;
};

template <class A>
TransitionIndex index_transitions(const A& a) {
    TransitionIndex idx;
    idx.out.resize(a.states.size());
    for (int i = 0; i < int(a.transitions.size()); ++i)
        idx.out[a.transitions[i].from].push_back(i);
    return idx;
}

} // namespace detail

} // namespace mema
