#include <doctest.h>

#include "mema/corpus.hpp"
#include "mema/encodings.hpp"
#include "mema/errors.hpp"
#include "mema/membership.hpp"

#include "generators.hpp"
#include "oracles.hpp"

using namespace mema;

namespace {

Letter a = Letter::intern("a");
Letter b = Letter::intern("b");

} // namespace

TEST_CASE("fig2 membership matches the position-distinctness oracle") {
    Automaton m{fig2_lp()};
    CHECK(decide_membership(m, parse_word("a b a c a d")).accepted);
    CHECK(!decide_membership(m, parse_word("a a b a c a")).accepted);

    // spot check against the direct definition on a word sample
    std::vector<Letter> pool{a, b, Letter::intern("c")};
    for (const Word& w : memtest::words_up_to(pool, 5))
        CHECK(decide_membership(m, w).accepted == memtest::fig2_language(w));
}

TEST_CASE("fig3 membership on the worked word") {
    Automaton m{fig3_hra()};
    CHECK(decide_membership(m, parse_word("a b c a b b a")).accepted);
    CHECK(!decide_membership(m, parse_word("a b")).accepted); // ends outside the finals
}

TEST_CASE("empty word accepted exactly when the initial state is final") {
    NuAutomaton m;
    m.states = {"q"};
    m.initial = 0;
    m.finals = {0};
    CHECK(decide_membership(Automaton{m}, {}).accepted);
    m.finals = {};
    CHECK(!decide_membership(Automaton{m}, {}).accepted);
}

TEST_CASE("membership rejects invalid automata") {
    NuAutomaton m;
    m.states = {"q"};
    m.initial = 3; // out of range
    CHECK_THROWS_AS(decide_membership(Automaton{m}, {}), UsageError);
}

TEST_CASE("certificate round trip and mutations") {
    Automaton m{fig2_lp()};
    Word w = parse_word("a b a c a d");
    MembershipResult r = decide_membership(m, w);
    REQUIRE(r.accepted);
    CHECK(check_certificate(m, w, *r.witness).ok);

    Run wrong_final = *r.witness;
    wrong_final.configs.back().state = (wrong_final.configs.back().state + 1) % 6;
    CHECK(!check_certificate(m, w, wrong_final).ok);

    Run broken_step = *r.witness;
    broken_step.configs[2].memory.add({"X", 1}, Letter::intern("zz"));
    CHECK(!check_certificate(m, w, broken_step).ok);

    Run wrong_word = *r.witness;
    CHECK(!check_certificate(m, parse_word("a b a c a a"), wrong_word).ok);
}

TEST_CASE("certificate rejects a non-final ending") {
    // single-final machine so the wrong-final mutation is observable
    NuAutomaton m;
    m.states = {"p", "q"};
    m.initial = 0;
    m.finals = {1};
    m.variables = {{"v", 1}};
    m.initial_memory = MemoryContext::over(m.variables);
    m.transitions.push_back({NuTransition::Kind::Any, 0, 1, {}, {}});
    m.transitions.push_back({NuTransition::Kind::Any, 0, 0, {}, {}});

    Automaton am{m};
    Word w{a};
    MembershipResult r = decide_membership(am, w);
    REQUIRE(r.accepted);

    Run self_loop = *r.witness;
    self_loop.steps[0].transition = 1; // valid application, ends in the non-final state
    self_loop.configs[1].state = 0;
    CertificateCheck check = check_certificate(am, w, self_loop);
    CHECK(!check.ok);
    CHECK(check.reason.find("final") != std::string::npos);
}

TEST_CASE("certificate length bound") {
    // |Q| = 3, |V| = 2, |w| = 2: bound = 2 + 2*(3*2) = 14, so 15 steps fail
    NuAutomaton m;
    m.states = {"p", "q", "r"};
    m.initial = 0;
    m.finals = {2};
    m.variables = {{"v", 1}, {"w", 1}};
    m.initial_memory = MemoryContext::over(m.variables);
    m.transitions.push_back({NuTransition::Kind::Reset, 0, 0, {}, {}}); // idle padding
    m.transitions.push_back({NuTransition::Kind::Any, 0, 1, {}, {}});
    m.transitions.push_back({NuTransition::Kind::Any, 1, 2, {}, {}});

    Word w{a, b};
    Run run;
    Configuration c{0, m.initial_memory};
    for (int i = 0; i < 13; ++i) { // 13 eps + 2 letters = 15 transitions
        run.configs.push_back(c);
        run.steps.push_back({0, std::nullopt});
    }
    run.configs.push_back(c);
    run.steps.push_back({1, a});
    run.configs.push_back({1, m.initial_memory});
    run.steps.push_back({2, b});
    run.configs.push_back({2, m.initial_memory});

    Automaton am{m};
    CertificateCheck fifteen = check_certificate(am, w, run);
    CHECK(!fifteen.ok);
    CHECK(fifteen.reason.find("bound") != std::string::npos);

    // dropping one padding step brings it to m = 14 = the bound
    run.configs.erase(run.configs.begin());
    run.steps.erase(run.steps.begin());
    CHECK(check_certificate(am, w, run).ok);
}

TEST_CASE("enumerate_language basics") {
    NuAutomaton silent;
    silent.states = {"q"};
    silent.initial = 0;
    silent.finals = {0};
    CHECK(enumerate_language(Automaton{silent}, 2, {a}) == std::set<Word>{{}});

    // the repetition states of fig3 are reachable with two equal letters:
    // parity alternation admits aa and bb but no word with distinct letters
    std::set<Word> fig3 = enumerate_language(Automaton{fig3_hra()}, 2, {a, b});
    CHECK(fig3 == std::set<Word>{{a, a}, {b, b}});
}

TEST_CASE("enumerate_language agrees with the fig2 oracle") {
    Automaton m{fig2_lp()};
    std::vector<Letter> pool{a, b, Letter::intern("c"), Letter::intern("d")};
    std::set<Word> enumerated = enumerate_language(m, 4, pool);
    for (const Word& w : memtest::words_up_to(pool, 4))
        CHECK(enumerated.count(w) == std::size_t(memtest::fig2_language(w) ? 1 : 0));
}

TEST_CASE("accepts_word_over finds shortest pool words") {
    Automaton m{fig3_hra()};
    auto found = accepts_word_over(m, {a, b}, 10);
    REQUIRE(found);
    CHECK(found->size() == 2); // aa or bb
    CHECK(decide_membership(m, *found).accepted);

    NuAutomaton blocked;
    blocked.states = {"p", "q"};
    blocked.initial = 0;
    blocked.finals = {1};
    blocked.variables = {{"v", 1}};
    blocked.initial_memory = MemoryContext::over(blocked.variables);
    blocked.transitions.push_back({NuTransition::Kind::Read, 0, 1, {"v", 1}, {}});
    CHECK(!accepts_word_over(Automaton{blocked}, {a, b}, 16));
}

TEST_CASE("membership is deterministic and witnesses replay") {
    memtest::Rng rng(101);
    std::vector<Letter> pool{a, b};
    for (int round = 0; round < 30; ++round) {
        Automaton m{memtest::random_lama2(rng, 4, 3, 6, true)};
        for (const Word& w : memtest::words_up_to(pool, 3)) {
            MembershipResult first = decide_membership(m, w);
            MembershipResult again = decide_membership(m, w);
            CHECK(first.accepted == again.accepted);
            if (first.accepted) {
                CHECK(first.witness->steps.size() == again.witness->steps.size());
                CHECK(check_certificate(m, w, *first.witness).ok);
            }
        }
    }
}

TEST_CASE("membership is invariant under injective letter renaming") {
    memtest::Rng rng(113);
    auto rename = [](Letter u) { return Letter::intern(u.text() + "_r"); };
    for (int round = 0; round < 25; ++round) {
        NuAutomaton m = memtest::random_nu(rng, 4, 3, 7, false);
        REQUIRE(validate(m).empty());
        NuAutomaton renamed = m;
        renamed.initial_memory = MemoryContext::over(renamed.variables);
        for (const auto& [v, letters] : m.initial_memory.slots())
            for (Letter u : letters) renamed.initial_memory.add(v, rename(u));

        for (const Word& w : memtest::words_up_to(memtest::small_pool(), 3)) {
            Word rw;
            for (Letter u : w) rw.push_back(rename(u));
            CHECK(decide_membership(Automaton{m}, w).accepted ==
                  decide_membership(Automaton{renamed}, rw).accepted);
        }
    }
}

TEST_CASE("membership agrees with enumerate_language on small machines") {
    memtest::Rng rng(131);
    std::vector<Letter> pool{a, b};
    for (int round = 0; round < 10; ++round) {
        Automaton m{memtest::random_hra(rng, 3, 2, 5, false)};
        std::set<Word> language = enumerate_language(m, 3, pool);
        for (const Word& w : memtest::words_up_to(pool, 3))
            CHECK(decide_membership(m, w).accepted == (language.count(w) == 1));
    }
}
