#include <doctest.h>

#include <algorithm>

#include "mema/corpus.hpp"
#include "mema/encodings.hpp"
#include "mema/errors.hpp"
#include "mema/membership.hpp"

#include "generators.hpp"

using namespace mema;

namespace {

Letter a = Letter::intern("a");
Letter b = Letter::intern("b");

int count_obs(const Lama& m) {
    return int(std::count_if(m.transitions.begin(), m.transitions.end(),
                             [](const LamaTransition& t) { return t.observable(); }));
}

int count_obs(const NuAutomaton& m) {
    return int(std::count_if(m.transitions.begin(), m.transitions.end(),
                             [](const NuTransition& t) { return t.observable(); }));
}

} // namespace

TEST_CASE("xi renaming") {
    CHECK(format_word(xi_rename(parse_word("a b a"), 2)) == "a~1 a~2 b~1 b~2 a~1 a~2");
    CHECK(format_word(xi_rename(parse_word("a b"), 1)) == "a~1 b~1");
    CHECK(xi_rename({}, 2).empty());
    CHECK_THROWS_AS(xi_rename(parse_word("a~1"), 2), FormatError);
}

TEST_CASE("zeta renaming reproduces the worked examples") {
    CHECK(format_word(zeta_rename(parse_word("a b a c a"))) ==
          "a#0 a#1 b#0 b#1 a#1 a#2 c#0 c#1 a#2 a#3");
    CHECK(format_word(zeta_rename(parse_word("a b c a b b a"))) ==
          "a#0 a#1 b#0 b#1 c#0 c#1 a#1 a#2 b#1 b#2 b#2 b#3 a#2 a#3");
    CHECK(zeta_rename({}).empty());
    CHECK_THROWS_AS(zeta_rename(parse_word("a#0")), FormatError);
}

TEST_CASE("lama_to_nu structure on fig2") {
    Lama fig2 = fig2_lp();
    NuAutomaton enc = lama_to_nu(fig2);
    CHECK(validate(enc).empty());
    CHECK(enc.states.size() == 6 + 6);   // one fresh state per observable transition
    CHECK(count_obs(enc) == 12);         // two chained steps per observable transition
    CHECK(enc.initial == fig2.initial);
    CHECK(enc.finals == fig2.finals);
}

TEST_CASE("lama_to_nu renames the initial memory componentwise") {
    Lama m;
    m.states = {"q"};
    m.layers = 2;
    m.variables = {{"X", 1}, {"Y", 2}};
    m.initial_memory = MemoryContext::over(m.variables);
    m.initial_memory.add({"X", 1}, a);
    m.initial_memory.add({"Y", 2}, a);
    NuAutomaton enc = lama_to_nu(m);
    CHECK(enc.initial_memory.at({"X", 1}).contains(Letter::intern("a~1")));
    CHECK(enc.initial_memory.at({"Y", 1}).contains(Letter::intern("a~2")));
}

TEST_CASE("single-layer encoding keeps the transition structure") {
    memtest::Rng rng(3);
    Lama one;
    one.states = {"p", "q"};
    one.initial = 0;
    one.finals = {1};
    one.layers = 1;
    one.variables = {{"v", 1}};
    one.initial_memory = MemoryContext::over(one.variables);
    one.transitions.push_back(
        {LamaTransition::Kind::Obs, 0, 1, {LayerAction{{VariableId{"v", 1}, Mode::Write}}}, {}});
    NuAutomaton enc = lama_to_nu(one);
    CHECK(enc.states.size() == 2); // chains of length one add no states
    CHECK(enc.transitions.size() == 1);
    CHECK(enc.transitions[0].kind == NuTransition::Kind::Write);
}

TEST_CASE("nu_to_lama is a direct relabeling") {
    NuAutomaton m;
    m.states = {"p", "q"};
    m.initial = 0;
    m.finals = {1};
    m.variables = {{"v", 1}};
    m.initial_memory = MemoryContext::over(m.variables);
    m.transitions.push_back({NuTransition::Kind::Any, 0, 1, {}, {}});
    m.transitions.push_back({NuTransition::Kind::Read, 0, 1, {"v", 1}, {}});

    Lama enc = nu_to_lama(m);
    CHECK(enc.layers == 1);
    REQUIRE(enc.transitions.size() == 2);
    CHECK(!enc.transitions[0].alpha[0].has_value());
    REQUIRE(enc.transitions[1].alpha[0].has_value());
    CHECK(enc.transitions[1].alpha[0]->second == Mode::Read);
}

TEST_CASE("nu/lama round trip preserves membership") {
    memtest::Rng rng(17);
    for (int round = 0; round < 50; ++round) {
        NuAutomaton m = memtest::random_nu(rng, 4, 3, 7, false);
        REQUIRE(validate(m).empty());
        Lama enc = nu_to_lama(m);
        for (const Word& w : memtest::words_up_to(memtest::small_pool(), 3))
            CHECK(decide_membership(Automaton{m}, w).accepted ==
                  decide_membership(Automaton{enc}, w).accepted);
    }
}

TEST_CASE("xi encoding theorem on random two-layer machines") {
    memtest::Rng rng(19);
    for (int round = 0; round < 60; ++round) {
        Lama m = memtest::random_lama2(rng, 4, 3, 6, true);
        REQUIRE(validate(m).empty());
        NuAutomaton enc = lama_to_nu(m);
        REQUIRE(validate(enc).empty());
        CHECK(enc.states.size() == m.states.size() + std::size_t(count_obs(m)) * (m.layers - 1));
        for (const Word& w : memtest::words_up_to(memtest::small_pool(), 3))
            CHECK(decide_membership(Automaton{m}, w).accepted ==
                  decide_membership(Automaton{enc}, xi_rename(w, m.layers)).accepted);
    }
}

TEST_CASE("hra_to_lama structure on fig3") {
    Hra fig3 = fig3_hra();
    Lama enc = hra_to_lama(fig3);
    CHECK(validate(enc).empty());
    CHECK(enc.states.size() == 4 + 6); // one fresh state per observable transition
    CHECK(enc.layers == 2);
    REQUIRE(enc.variables.size() == 4); // O^1, E^2 plus one scratch per layer
    CHECK(enc.variables[0] == VariableId{"O", 1});
    CHECK(enc.variables[1] == VariableId{"E", 2});
    CHECK(enc.variables[2] == VariableId{"omega1", 1});
    CHECK(enc.variables[3] == VariableId{"omega2", 2});
    CHECK(count_obs(enc) == 12);
}

TEST_CASE("hra_to_lama renames the initial memory with first components") {
    Hra m;
    m.states = {"q"};
    m.initial = 0;
    m.histories = {{"O", 1}, {"E", 1}};
    m.initial_memory = MemoryContext::over(m.histories);
    m.initial_memory.add({"O", 1}, a);
    Lama enc = hra_to_lama(m);
    CHECK(enc.initial_memory.at({"O", 1}).contains(Letter::intern("a#0")));
    CHECK(enc.initial_memory.at({"E", 2}).empty());
    CHECK(enc.initial_memory.at({"omega1", 1}).empty());
    CHECK(enc.initial_memory.at({"omega2", 2}).empty());
}

TEST_CASE("zeta encoding theorem on fig3 and random machines") {
    Automaton fig3{fig3_hra()};
    Automaton fig3_enc{hra_to_lama(fig3_hra())};
    for (const Word& w : memtest::words_up_to(memtest::small_pool(), 4))
        CHECK(decide_membership(fig3, w).accepted ==
              decide_membership(fig3_enc, zeta_rename(w)).accepted);

    memtest::Rng rng(29);
    for (int round = 0; round < 40; ++round) {
        Hra m = memtest::random_hra(rng, 4, 2, 6, true);
        REQUIRE(validate(m).empty());
        Lama enc = hra_to_lama(m);
        REQUIRE(validate(enc).empty());
        CHECK(enc.variables.size() == 2 * m.histories.size());
        for (const Word& w : memtest::words_up_to(memtest::small_pool(), 3))
            CHECK(decide_membership(Automaton{m}, w).accepted ==
                  decide_membership(Automaton{enc}, zeta_rename(w)).accepted);
    }
}

TEST_CASE("well-formedness relates the paired contexts") {
    Hra fig3 = fig3_hra();
    MemoryContext empty_hra = fig3.initial_memory;
    Lama enc = hra_to_lama(fig3);
    MemoryContext empty_enc = enc.initial_memory;

    CHECK(is_well_formed(empty_enc, {}, empty_hra, fig3.histories));
    CHECK(is_well_formed(empty_enc, parse_word("x y"), empty_hra, fig3.histories));

    // after reading "a": the history holds a, the encoding holds a#1
    MemoryContext hra_after = empty_hra;
    hra_after.add({"O", 1}, a);
    MemoryContext enc_after = empty_enc;
    enc_after.add({"O", 1}, Letter::intern("a#1"));
    Word w{a};
    CHECK(is_well_formed(enc_after, w, hra_after, fig3.histories));

    MemoryContext stale = empty_enc;
    stale.add({"O", 1}, Letter::intern("a#0")); // stale occurrence index
    CHECK(!is_well_formed(stale, w, hra_after, fig3.histories));
}

namespace {

// configurations reachable consuming exactly w, epsilon-closed
template <class A>
std::set<Configuration> reachable_after(const A& a, const Word& w) {
    std::set<Configuration> layer{initial_configuration(a)};
    auto close = [&](std::set<Configuration>& s) {
        std::vector<Configuration> queue(s.begin(), s.end());
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (const Configuration& n : successors(a, queue[i], std::nullopt))
                if (s.insert(n).second) queue.push_back(n);
    };
    close(layer);
    for (Letter u : w) {
        std::set<Configuration> next;
        for (const Configuration& c : layer)
            for (const Configuration& n : successors(a, c, u)) next.insert(n);
        close(next);
        layer = std::move(next);
    }
    return layer;
}

} // namespace

TEST_CASE("lockstep well-formedness along paired simulations") {
    memtest::Rng rng(37);
    int paired = 0;
    for (int round = 0; round < 60; ++round) {
        Hra m = memtest::random_hra(rng, 3, 2, 5, true);
        REQUIRE(validate(m).empty());
        Lama enc = hra_to_lama(m);

        for (const Word& w : memtest::words_up_to(memtest::small_pool(), 3)) {
            std::set<Configuration> hra_reach = reachable_after(m, w);
            std::set<Configuration> enc_reach = reachable_after(enc, zeta_rename(w));

            for (const Configuration& hc : hra_reach) {
                bool matched = false;
                for (const Configuration& ec : enc_reach)
                    if (ec.state == hc.state &&
                        is_well_formed(ec.memory, w, hc.memory, m.histories))
                        matched = true;
                CHECK(matched);
                ++paired;
            }
            for (const Configuration& ec : enc_reach) {
                if (ec.state >= int(m.states.size())) continue; // chain states
                bool matched = false;
                for (const Configuration& hc : hra_reach)
                    if (hc.state == ec.state &&
                        is_well_formed(ec.memory, w, hc.memory, m.histories))
                        matched = true;
                CHECK(matched);
            }
        }
    }
    CHECK(paired > 200);
}
