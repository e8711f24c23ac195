// Serial vs OpenMP kernel comparison on two workloads: batch membership over
// a generated word corpus, and non-emptiness reachability on automata whose
// abstraction must be explored exhaustively (no final state reachable).

#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "mema/corpus.hpp"
#include "mema/emptiness.hpp"
#include "mema/membership.hpp"

using namespace mema;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
#endif
}

std::vector<Word> words_up_to(const std::vector<Letter>& pool, int len) {
    std::vector<Word> out{{}};
    std::vector<Word> layer{{}};
    for (int l = 0; l < len; ++l) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (Letter u : pool) {
                Word e = w;
                e.push_back(u);
                next.push_back(std::move(e));
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

// Dense automaton with unreachable finals: the abstraction BFS has to visit
// every reachable (state, key-set) pair.
NuAutomaton exhaustive_nu(int states, int vars, unsigned seed) {
    NuAutomaton a;
    for (int i = 0; i < states; ++i) a.states.push_back("q" + std::to_string(i));
    a.states.push_back("unreachable_final");
    a.initial = 0;
    a.finals = {states};
    for (int v = 0; v < vars; ++v) a.variables.push_back({"v" + std::to_string(v), 1});
    a.initial_memory = MemoryContext::over(a.variables);

    std::mt19937 rng(seed);
    auto state = [&] { return int(rng() % states); };
    auto var = [&] { return a.variables[rng() % vars]; };
    for (int i = 0; i < states * 6; ++i) {
        switch (rng() % 4) {
            case 0:
                a.transitions.push_back({NuTransition::Kind::Write, state(), state(), var(), {}});
                break;
            case 1:
                a.transitions.push_back({NuTransition::Kind::Read, state(), state(), var(), {}});
                break;
            case 2:
                a.transitions.push_back({NuTransition::Kind::Any, state(), state(), {}, {}});
                break;
            default: {
                std::vector<VariableId> rs{var()};
                a.transitions.push_back(
                    {NuTransition::Kind::Reset, state(), state(), {}, std::move(rs)});
                break;
            }
        }
    }
    return a;
}

void report(const char* name, double serial, double parallel, bool equal) {
    std::printf("%-34s serial %8.3f s   parallel %8.3f s   speedup %.2fx   results %s\n", name,
                serial, parallel, serial / parallel, equal ? "equal" : "DIFFER");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel kernels run serially\n");
#endif

    {
        Automaton a{fig2_lp()};
        std::vector<Letter> pool{Letter::intern("a"), Letter::intern("b"), Letter::intern("c"),
                                 Letter::intern("d")};
        std::vector<Word> words = words_up_to(pool, 8);
        std::printf("membership batch: %zu words, length <= 8\n", words.size());

        double t0 = now();
        std::vector<bool> serial = decide_membership_batch_serial(a, words);
        double t1 = now();
        std::vector<bool> parallel = decide_membership_batch(a, words);
        double t2 = now();
        report("fig2_lp membership batch", t1 - t0, t2 - t1, serial == parallel);
    }

    {
        double serial_total = 0, parallel_total = 0;
        bool equal = true;
        long explored = 0;
        for (unsigned seed = 1; seed <= 3; ++seed) {
            NuAutomaton a = exhaustive_nu(400, 14, seed);
            double t0 = now();
            EmptinessVerdict s = decide_nonempty(a);
            double t1 = now();
            EmptinessVerdict p = decide_nonempty_parallel(a);
            double t2 = now();
            serial_total += t1 - t0;
            parallel_total += t2 - t1;
            equal = equal && s.nonempty == p.nonempty && s.explored == p.explored;
            explored += s.explored;
        }
        std::printf("emptiness: 3 automata, %ld abstract states explored\n", explored);
        report("non-emptiness reachability", serial_total, parallel_total, equal);
    }
    return 0;
}
