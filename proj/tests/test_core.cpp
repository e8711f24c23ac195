#include <doctest.h>

#include <unordered_set>

#include "mema/errors.hpp"
#include "mema/memory.hpp"

#include "generators.hpp"

using namespace mema;

TEST_CASE("letter interning") {
    CHECK(Letter::intern("a").text() == "a");
    CHECK(Letter::intern("a") == Letter::intern("a"));
    CHECK(Letter::intern("a").id() == Letter::intern("a").id());
    CHECK(Letter::intern("a") != Letter::intern("b"));
    CHECK_THROWS_AS(Letter::intern("a b"), FormatError);
    CHECK_THROWS_AS(Letter::intern(""), FormatError);
    CHECK_THROWS_AS(Letter::intern("a\tb"), FormatError);
}

TEST_CASE("letter ordering is textual") {
    CHECK(Letter::intern("a") < Letter::intern("b"));
    CHECK(Letter::intern("a10") < Letter::intern("a2")); // lexicographic, not numeric
}

TEST_CASE("fresh letter picks the smallest unused counter") {
    CHECK(fresh_letter({}) == Letter::intern("τ0"));
    CHECK(fresh_letter({Letter::intern("τ0")}) == Letter::intern("τ1"));
    CHECK(fresh_letter({Letter::intern("a"), Letter::intern("b")}) == Letter::intern("τ0"));

    memtest::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        LetterSet avoid;
        int n = rng.below(20);
        for (int k = 0; k < n; ++k)
            avoid.insert(Letter::intern("τ" + std::to_string(rng.below(12))));
        CHECK(!avoid.contains(fresh_letter(avoid)));
    }
}

TEST_CASE("word text format") {
    Word w = parse_word("a b a c a");
    CHECK(w.size() == 5);
    CHECK(format_word(w) == "a b a c a");
    CHECK(parse_word("").empty());
    CHECK_THROWS_AS(parse_word("a  b"), FormatError);
    CHECK_THROWS_AS(parse_word("a b "), FormatError);
}

namespace {

VariableId X{"X", 1}, Y{"Y", 1};

MemoryContext ctx(std::initializer_list<std::pair<VariableId, LetterSet>> slots) {
    MemoryContext m;
    for (const auto& [v, s] : slots) m.assign(v, s);
    return m;
}

Letter a = Letter::intern("a");
Letter b = Letter::intern("b");

} // namespace

TEST_CASE("layer injectivity") {
    CHECK(layer_injective(ctx({{X, {a}}, {Y, {b}}}), 1));
    CHECK(!layer_injective(ctx({{X, {a}}, {Y, {a}}}), 1));
    CHECK(layer_injective(ctx({{X, {}}, {Y, {}}}), 1));
    CHECK_THROWS_AS(layer_injective(ctx({{X, {a}}}), 2), DomainError);
}

TEST_CASE("apply_reset") {
    MemoryContext m = ctx({{X, {a}}});
    std::vector<VariableId> rx{X};
    MemoryContext cleared = apply_reset(m, rx);
    CHECK(cleared.at(X).empty());
    CHECK(m.at(X).contains(a)); // value semantics: input untouched

    CHECK(apply_reset(m, {}) == m);

    MemoryContext two = ctx({{X, {a}}, {Y, {b}}});
    std::vector<VariableId> ry{Y};
    MemoryContext after = apply_reset(two, ry);
    CHECK(after.at(X).contains(a));
    CHECK(after.at(Y).empty());

    std::vector<VariableId> unknown{{"Z", 1}};
    CHECK_THROWS_AS(apply_reset(m, unknown), DomainError);

    // idempotence per reset set
    CHECK(apply_reset(after, ry) == after);
}

TEST_CASE("memory context equality is extensional") {
    MemoryContext m1;
    m1.assign(Y, {b});
    m1.assign(X, {a});
    MemoryContext m2;
    m2.assign(X, {a});
    m2.assign(Y, LetterSet{b});
    CHECK(m1 == m2);
    CHECK(m1.hash() == m2.hash());

    m2.add(Y, a);
    CHECK(m1 != m2);
}

TEST_CASE("configurations hash consistently") {
    std::unordered_set<Configuration> seen;
    seen.insert({0, ctx({{X, {a}}})});
    seen.insert({0, ctx({{X, {a}}})});
    seen.insert({1, ctx({{X, {a}}})});
    CHECK(seen.size() == 2);
}
