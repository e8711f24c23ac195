#pragma once

#include <span>

#include "mema/automata.hpp"

namespace mema {

/// Layer renaming: every letter u becomes the block u~1 ... u~n, so letters
/// aimed at different layers can never collide in a single-layer automaton.
/// Throws FormatError when an input letter contains the reserved "~".
Word xi_rename(const Word& w, int layers);

/// Single-layer simulation of an n-layered automaton: each observable
/// transition becomes a chain of n read/write/any steps through fresh
/// intermediate states, resets are copied, and the initial memory is renamed
/// componentwise (letter u stored on layer l becomes u~l).
NuAutomaton lama_to_nu(const Lama& a);

/// A nu-automaton is exactly a 1-layered automaton; language preserved.
Lama nu_to_lama(const NuAutomaton& a);

/// Occurrence renaming: the j-th occurrence (1-based, per distinct letter) of
/// u becomes the pair u#(j-1) u#j, so the second component is always fresh.
/// Throws FormatError when an input letter contains the reserved "#".
Word zeta_rename(const Word& w);

/// History simulation on |H| layers: history h_l maps to variable h^l plus a
/// scratch variable per layer used to certify absence; each observable
/// transition splits into a guard step and a write step through a fresh
/// intermediate state.
Lama hra_to_lama(const Hra& a);

/// Well-formedness of an encoded memory context w.r.t. the consumed word and
/// the history automaton's context: for every letter u and history h_l, the
/// latest occurrence component of u (u#occ if u occurs in w, u#0 otherwise)
/// is in encoded(h^l) iff u is in M(h_l). Scratch variables are unconstrained.
bool is_well_formed(const MemoryContext& encoded, const Word& w, const MemoryContext& hra_memory,
                    std::span<const VariableId> histories);

} // namespace mema
