#pragma once

#include "mema/automata.hpp"

namespace mema {

/// Six-state 2-layered automaton over variables X (layer 1) and Y (layer 2);
/// every state accepting. X collects the letters at even positions, Y those
/// at positions divisible by three, so a word is accepted iff both groups
/// are pairwise distinct.
Lama fig2_lp();

/// Four-state history automaton over histories O and E: a block of pairwise
/// distinct letters stored by position parity, followed by repetitions that
/// must alternate parity; finals are the repetition states.
Hra fig3_hra();

/// Layered automaton whose shortest accepted word has length doubly
/// exponential in n: a write phase into X (layer 1), a halving loop through
/// Y/Z (layer 2), and an (n-2)-bit counter on layers 3..n forcing 2^(n-2)
/// halvings before the final read of X. Requires n >= 3.
Lama double_exp(int n);

/// Accepted witness for double_exp(n): 2^(2^(n-2)) distinct phase-1 letters
/// "u<i>", exact-half splits each iteration, fresh counter letters "a<j>".
/// Desk scale: 3 <= n <= 5.
Word double_exp_witness(int n);

/// Same schedule with an arbitrary phase-1 letter count (the halving plan
/// runs on whatever it has; too few letters yield a rejected word).
Word double_exp_word(int n, long phase1_letters);

} // namespace mema
