#include <doctest.h>

#include <algorithm>

#include "mema/emptiness.hpp"
#include "mema/errors.hpp"
#include "mema/membership.hpp"
#include "mema/reductions.hpp"

#include "generators.hpp"
#include "oracles.hpp"

using namespace mema;

TEST_CASE("dimacs parsing") {
    Cnf cnf = parse_dimacs("p cnf 2 1\n1 -2 0\n");
    CHECK(cnf.num_vars == 2);
    REQUIRE(cnf.clauses.size() == 1);
    CHECK(cnf.clauses[0] == std::vector<int>{1, -2});

    Cnf tautology = parse_dimacs("c comment\np cnf 2 2\n1 -1 0\n2 0\n");
    CHECK(tautology.dropped_tautologies == 1);
    REQUIRE(tautology.clauses.size() == 1);
    CHECK(tautology.clauses[0] == std::vector<int>{2});

    Cnf dedup = parse_dimacs("p cnf 2 1\n2 1 2 0\n");
    CHECK(dedup.clauses[0] == std::vector<int>{1, 2}); // sorted by variable, deduplicated

    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);   // literal out of range
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);   // clause count mismatch
    CHECK_THROWS_AS(parse_dimacs("p dnf 1 1\n1 0\n"), ParseError);   // bad header
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1\n"), ParseError);     // missing terminator
}

TEST_CASE("qdimacs parsing") {
    Qbf qbf = parse_qdimacs("p cnf 2 1\ne 1 0\na 2 0\n1 -2 0\n");
    REQUIRE(qbf.prefix.size() == 2);
    CHECK(qbf.prefix[0] == std::pair{Quant::Exists, 1});
    CHECK(qbf.prefix[1] == std::pair{Quant::Forall, 2});

    // prefix must cover 1..n in order, once
    CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\ne 2 0\na 1 0\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\ne 1 0\n1 -2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 1\ne 1 1 0\n1 0\n"), ParseError);
}

TEST_CASE("brute force oracles") {
    CHECK(brute_force_sat(parse_dimacs("p cnf 1 1\n1 0\n")));
    CHECK(!brute_force_sat(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")));
    CHECK(brute_force_qbf(parse_qdimacs("p cnf 4 2\ne 1 0\na 2 0\na 3 0\ne 4 0\n1 -4 0\n-2 -3 4 0\n")));
    CHECK(!brute_force_qbf(parse_qdimacs("p cnf 1 1\na 1 0\n1 0\n")));

    Cnf big;
    big.num_vars = 25;
    CHECK_THROWS_AS(brute_force_sat(big), UsageError);
}

TEST_CASE("3sat reduction examples") {
    Cnf cnf = parse_dimacs("p cnf 3 2\n1 2 -3 0\n-1 2 3 0\n");
    auto [lama, word] = reduce_3sat(cnf);
    REQUIRE(validate(lama).empty());
    CHECK(word.size() == 5);
    CHECK(format_word(word) == "1 1 1 1 1");
    CHECK(lama.states.size() == 3 + 2 + 1);
    CHECK(decide_membership(Automaton{lama}, word).accepted);

    CHECK_THROWS_AS(reduce_3sat(parse_dimacs("p cnf 1 1\n1 0\n")), UsageError);

    // all eight sign patterns over three variables: unsatisfiable
    std::string all8 = "p cnf 3 8\n";
    for (int bits = 0; bits < 8; ++bits) {
        for (int v = 1; v <= 3; ++v)
            all8 += std::to_string((bits >> (v - 1)) & 1 ? v : -v) + " ";
        all8 += "0\n";
    }
    Cnf unsat = parse_dimacs(all8);
    REQUIRE(!memtest::naive_sat(unsat));
    auto [unsat_lama, unsat_word] = reduce_3sat(unsat);
    CHECK(!decide_membership(Automaton{unsat_lama}, unsat_word).accepted);
}

TEST_CASE("3sat reduction agrees with the truth-table oracle") {
    memtest::Rng rng(71);
    for (int round = 0; round < 60; ++round) {
        Cnf cnf;
        cnf.num_vars = 4;
        int clauses = 1 + rng.below(5);
        for (int c = 0; c < clauses; ++c) {
            // three distinct variables with random signs
            std::vector<int> vars{1, 2, 3, 4};
            std::swap(vars[rng.below(4)], vars[3]);
            vars.pop_back();
            std::sort(vars.begin(), vars.end());
            std::vector<int> clause;
            for (int v : vars) clause.push_back(rng.coin() ? v : -v);
            cnf.clauses.push_back(std::move(clause));
        }
        auto [lama, word] = reduce_3sat(cnf);
        REQUIRE(validate(lama).empty());
        CHECK(decide_membership(Automaton{lama}, word).accepted == memtest::naive_sat(cnf));
    }
}

TEST_CASE("tqbf input word follows the unfolding") {
    Qbf paper = parse_qdimacs("p cnf 4 2\ne 1 0\na 2 0\na 3 0\ne 4 0\n1 -4 0\n-2 -3 4 0\n");
    Word w = tqbf_input_word(paper);
    CHECK(format_word(w) ==
          "1_1 1_2 1_3 1_4 1_1 1_4 1_2 1_3 1_4 2_3 1_3 1_4 1_1 1_4 1_2 1_3 1_4 2_3 2_2 "
          "1_2 1_3 1_4 1_1 1_4 1_2 1_3 1_4 2_3 1_3 1_4 1_1 1_4 1_2 1_3 1_4 2_3 2_2");
    CHECK(w.size() == 37);

    Qbf tiny = parse_qdimacs("p cnf 1 1\ne 1 0\n1 0\n");
    CHECK(format_word(tqbf_input_word(tiny)) == "1_1 1_1");

    Qbf empty;
    CHECK(tqbf_input_word(empty).empty());

    // each universal quantifier doubles the unfolded body
    Qbf u1 = parse_qdimacs("p cnf 1 1\na 1 0\n1 0\n");
    Qbf u2 = parse_qdimacs("p cnf 2 1\na 1 0\na 2 0\n1 2 0\n");
    CHECK(tqbf_input_word(u1).size() == 2 * (1 + 1) + 2);
    CHECK(tqbf_input_word(u2).size() > 2 * tqbf_input_word(u1).size());
}

TEST_CASE("tqbf reduction examples") {
    Qbf truthy = parse_qdimacs("p cnf 1 1\ne 1 0\n1 0\n");
    NuAutomaton m = reduce_tqbf(truthy);
    REQUIRE(validate(m).empty());
    CHECK(decide_nonempty(m).nonempty);
    CHECK(decide_membership(Automaton{m}, tqbf_input_word(truthy)).accepted);

    Qbf falsy = parse_qdimacs("p cnf 1 1\na 1 0\n1 0\n");
    NuAutomaton mf = reduce_tqbf(falsy);
    REQUIRE(validate(mf).empty());
    CHECK(!decide_nonempty(mf).nonempty);
    CHECK(!decide_membership(Automaton{mf}, tqbf_input_word(falsy)).accepted);
}

TEST_CASE("tqbf reduction structure of the worked instance") {
    Qbf paper = parse_qdimacs("p cnf 4 2\ne 1 0\na 2 0\na 3 0\ne 4 0\n1 -4 0\n-2 -3 4 0\n");
    NuAutomaton m = reduce_tqbf(paper);
    REQUIRE(validate(m).empty());
    // clauses: 2*sum(k)+1 states; existentials add 1 each, universals 5 each
    CHECK(m.states.size() == std::size_t(2 * (2 + 3) + 1 + 2 * 1 + 2 * 5));
    // clause lattices have 4k-2 reads; choices 2 each; universal loops 6 each
    CHECK(m.transitions.size() == std::size_t((4 * 2 - 2) + (4 * 3 - 2) + 2 * 2 + 2 * 6));
    CHECK(m.variables.size() == std::size_t(2 * 4 + 2)); // X/NX per variable, TX per universal
    CHECK(decide_nonempty(m).nonempty);
    CHECK(decide_membership(Automaton{m}, tqbf_input_word(paper)).accepted);
}

TEST_CASE("tqbf equivalence on exhaustive small formulas") {
    // all prefixes over two variables, all clause pairs from a small set
    std::vector<std::vector<int>> clauses{{1}, {-1}, {2}, {-2}, {1, 2}, {1, -2}, {-1, 2}, {-1, -2}};
    int checked = 0;
    for (int q = 0; q < 4; ++q) {
        for (std::size_t c1 = 0; c1 < clauses.size(); ++c1)
            for (std::size_t c2 = c1; c2 < clauses.size(); ++c2) {
                Qbf qbf;
                qbf.matrix.num_vars = 2;
                qbf.prefix = {{q & 1 ? Quant::Forall : Quant::Exists, 1},
                              {q & 2 ? Quant::Forall : Quant::Exists, 2}};
                qbf.matrix.clauses = {clauses[c1], clauses[c2]};
                bool expected = memtest::naive_qbf(qbf);
                NuAutomaton m = reduce_tqbf(qbf);
                REQUIRE(validate(m).empty());
                CHECK(decide_nonempty(m).nonempty == expected);
                CHECK(decide_membership(Automaton{m}, tqbf_input_word(qbf)).accepted == expected);
                ++checked;
            }
    }
    CHECK(checked == 4 * (8 * 9 / 2));
}

TEST_CASE("gadgets are deterministic outside the existential choice") {
    // per configuration and letter, at most one enabled successor unless the
    // source state is an existential entry
    Qbf paper = parse_qdimacs("p cnf 4 2\ne 1 0\na 2 0\na 3 0\ne 4 0\n1 -4 0\n-2 -3 4 0\n");
    NuAutomaton m = reduce_tqbf(paper);
    std::set<int> existential_entries;
    for (int i = 0; i < int(m.states.size()); ++i)
        if (m.states[i][0] == 'e' && m.states[i].find("_0") != std::string::npos)
            existential_entries.insert(i);

    // walk the accepting run and inspect branching along it
    MembershipResult r = decide_membership(Automaton{m}, tqbf_input_word(paper));
    REQUIRE(r.accepted);
    for (std::size_t i = 0; i + 1 < r.witness->configs.size(); ++i) {
        const Configuration& c = r.witness->configs[i];
        const auto& step = r.witness->steps[i];
        if (!step.letter) continue;
        auto next = successors(m, c, *step.letter);
        if (!existential_entries.count(c.state)) CHECK(next.size() <= 1);
    }
}
