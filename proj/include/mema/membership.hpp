#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mema/automata.hpp"

namespace mema {

/// Accepting run: alternating configurations and transition references,
/// s0 t1 s1 ... s_m. Observable steps carry the letter consumed.
struct RunStep {
    int transition = 0;
    std::optional<Letter> letter; // nullopt for non-observable steps
};

struct Run {
    std::vector<Configuration> configs; // m + 1 entries
    std::vector<RunStep> steps;         // m entries
};

struct MembershipResult {
    bool accepted = false;
    std::optional<Run> witness; // present iff accepted
};

/// Exact membership decision, breadth-first over (position, configuration)
/// with a visited set; the witness is the minimal-length accepting run under
/// a fixed expansion order. Throws UsageError when validate(a) is nonempty.
MembershipResult decide_membership(const NuAutomaton& a, const Word& w);
MembershipResult decide_membership(const Lama& a, const Word& w);
MembershipResult decide_membership(const Hra& a, const Word& w);
MembershipResult decide_membership(const Automaton& a, const Word& w);

struct CertificateCheck {
    bool ok = false;
    std::string reason; // empty when ok
    explicit operator bool() const { return ok; }
};

/// Replays the run and checks: every step is a valid transition application,
/// observable steps consume exactly `w`, the run starts at the initial
/// configuration and ends in a final state, and the length bound
/// m <= |w| + |w|*(|Q|*|V|) holds. Failures are results, not errors.
CertificateCheck check_certificate(const NuAutomaton& a, const Word& w, const Run& run);
CertificateCheck check_certificate(const Lama& a, const Word& w, const Run& run);
CertificateCheck check_certificate(const Hra& a, const Word& w, const Run& run);
CertificateCheck check_certificate(const Automaton& a, const Word& w, const Run& run);

/// Brute-force oracle: every word over `pool` of length <= max_len accepted
/// by decide_membership. Iterates the full word space; desk scale only.
std::set<Word> enumerate_language(const Automaton& a, int max_len,
                                  const std::vector<Letter>& pool);

/// Shortest word over `pool` of length <= max_len accepted by `a`, or
/// nullopt. Exact: 0/1-BFS over the (finite) configuration graph spanned by
/// pool letters, so it scales where literal enumeration cannot.
std::optional<Word> accepts_word_over(const Automaton& a, const std::vector<Letter>& pool,
                                      long max_len);

/// Batch kernels. The parallel variant distributes words across OpenMP
/// threads; the serial one is the reference the tests compare against.
std::vector<bool> decide_membership_batch(const Automaton& a, const std::vector<Word>& words);
std::vector<bool> decide_membership_batch_serial(const Automaton& a,
                                                 const std::vector<Word>& words);

} // namespace mema
