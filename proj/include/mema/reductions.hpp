#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "mema/automata.hpp"

namespace mema {

/// CNF in normalized form: within a clause, literals reference distinct
/// variables and are sorted by variable index. Tautological clauses are
/// dropped on load and counted.
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses; // signed 1-based variable indices
    int dropped_tautologies = 0;
};

enum class Quant { Exists, Forall };

struct Qbf {
    std::vector<std::pair<Quant, int>> prefix; // covers variables 1..n in order
    Cnf matrix;
};

/// DIMACS ("p cnf V C", 0-terminated clauses, 'c' comments). ParseError with
/// line numbers on malformed input.
Cnf parse_dimacs(std::string_view text);

/// QDIMACS: 'a'/'e' quantifier lines between the header and the clauses; the
/// prefix must quantify variables 1..n exactly once, in order.
Qbf parse_qdimacs(std::string_view text);

/// 3SAT as layered-automaton membership. Per variable x_i: variables X_i and
/// NX_i on layer i and a two-state choice gadget writing one of them; per
/// clause a two-state gadget with one read per literal. The word is n+m
/// copies of letter "1"; it is accepted iff the formula is satisfiable.
/// UsageError unless every clause has exactly 3 literals.
std::pair<Lama, Word> reduce_3sat(const Cnf& cnf);

/// TQBF as nu-automaton non-emptiness. Existential variables use the choice
/// gadget; universal ones a loop gadget that enumerates both assignments,
/// flagged by an extra variable TX_i; clauses become two-row lattices read
/// off the assignment. The language is nonempty iff the formula is true.
NuAutomaton reduce_tqbf(const Qbf& qbf);

/// The word the TQBF automaton accepts when the formula is true:
/// exists x_i -> 1_i . rest; forall x_i -> 1_i . rest . 2_i . 1_i . rest . 2_i;
/// clause j -> one 1_i per variable occurring in it. Doubles per universal.
Word tqbf_input_word(const Qbf& qbf);

/// Truth-table / game-tree oracles. UsageError above 24 (sat) / 16 (qbf)
/// variables.
bool brute_force_sat(const Cnf& cnf);
bool brute_force_qbf(const Qbf& qbf);

} // namespace mema
