#include <doctest.h>

#include "orbitropy/counting.hpp"

using namespace orbitropy;

namespace {

MultiMap nearest(FormulaPtr f) { return MultiMap::sample(std::move(f), Rounding::Nearest); }

}  // namespace

TEST_SUITE("symbolic") {

TEST_CASE("T_2 on dyadic cells is Markov") {
    auto s = Space::interval(64);
    auto seq = autonomous(tent_map(s, 2));
    auto part = partition(s, Rational(1, 4));
    for (int n = 1; n <= 12; ++n) {
        BigInt expect = BigInt(4) << (n - 1);
        CHECK(cover_count(seq, part, n) == expect);
        CHECK(relaxed_cover_count(seq, part, n) == expect);
    }
}

TEST_CASE("T_3 word counts grow by three") {
    auto s = Space::interval(81);
    auto part = partition(s, Rational(1, 3));
    auto seq = autonomous(tent_map(s, 3));
    for (int n = 1; n <= 8; ++n) CHECK(cover_count(seq, part, n) == BigInt(3) * pow(BigInt(3), n - 1));
}

TEST_CASE("relaxed count bounds realized count") {
    auto s = Space::interval(56);
    auto f = compose_formula({tent_formula(s, s, 8), inverse_formula(tent_formula(s, s, 7))});
    auto seq = autonomous(nearest(f));
    auto part = partition(s, Rational(1, 14));
    for (int n = 1; n <= 6; ++n) CHECK(relaxed_cover_count(seq, part, n) >= cover_count(seq, part, n));
    CHECK(relaxed_cover_count(seq, part, 6) > cover_count(seq, part, 6));
}

TEST_CASE("forward and backward propagation agree") {
    auto s = Space::interval(48);
    auto part = partition(s, Rational(1, 8));
    auto g = nearest(inverse_formula(tent_formula(s, s, 2)));
    MapSequence seq({}, {g, tent_map(s, 3), nearest(compose_formula({tent_formula(s, s, 4), inverse_formula(tent_formula(s, s, 3))}))});
    REQUIRE(backward_capable(seq));
    auto fwd = realized_counts_forward(seq, part, 7);
    REQUIRE(fwd.counts.size() == 7);
    for (int n = 1; n <= 7; ++n) CHECK(*realized_count_backward(seq, part, n) == fwd.counts[n - 1]);
}

TEST_CASE("symbolic counts match word enumeration") {
    auto s = Space::interval(32);
    auto part = partition(s, Rational(1, 4));
    std::vector<MapSequence> cases{
        autonomous(tent_map(s, 2)),
        autonomous(nearest(inverse_formula(tent_formula(s, s, 2)))),
        MapSequence({tent_map(s, 4)}, {nearest(inverse_formula(tent_formula(s, s, 2))), tent_map(s, 2)}),
    };
    for (auto& seq : cases) {
        auto sym = realized_counts(seq, part, 7);
        auto brute = enumerate_realized_word_counts(seq, part, 7, 1'000'000);
        REQUIRE(sym.counts.size() == 7);
        for (int i = 0; i < 7; ++i) CHECK(sym.counts[i] == brute[i]);
    }
}

TEST_CASE("state cap triggers backward continuation") {
    auto s = Space::interval(32);
    auto part = partition(s, Rational(1, 8));
    auto seq = autonomous(nearest(inverse_formula(tent_formula(s, s, 2))));
    SymbolicOptions tight;
    tight.state_cap = 20;
    auto a = realized_counts(seq, part, 6, tight);
    auto b = realized_counts(seq, part, 6);
    CHECK(a.forward_reach < 6);
    CHECK(a.counts == b.counts);
    tight.allow_backward = false;
    CHECK_THROWS_AS(cover_count(seq, part, 6, tight), CapError);
}

TEST_CASE("pointwise counts") {
    auto s = Space::interval(64);
    auto part = partition(s, Rational(1, 8));
    for (int n = 1; n <= 8; ++n) CHECK(pointwise_cover_count(autonomous(tent_map(s, 2)), part, n, 5) == 1);
    auto g = autonomous(nearest(inverse_formula(tent_formula(s, s, 2))));
    // a generic start keeps two preimage branches in different cells
    for (int n = 1; n <= 4; ++n) CHECK(pointwise_cover_count(g, part, n, 21) == BigInt(1) << (n - 1));
}

TEST_CASE("grid-bound tables start from grid points") {
    auto s = Space::interval(8);
    auto part = partition(s, Rational(1, 2));
    auto t = table_map(s, s, {{0}, {0}, {0}, {0}, {8}, {8}, {8}, {8}, {8}});
    auto seq = autonomous(t);
    CHECK(cover_count(seq, part, 5) == 3);
    CHECK(grid_orbit_words(seq, part, 5) == 3);
}

TEST_CASE("partition must match the sequence space") {
    auto seq = autonomous(tent_map(Space::interval(8), 2));
    CHECK_THROWS_AS(cover_count(seq, partition(Space::interval(16), Rational(1, 2)), 3), InputError);
}

}
