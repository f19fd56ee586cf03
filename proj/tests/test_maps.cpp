#include <doctest.h>

#include "orbitropy/maps.hpp"

using namespace orbitropy;

TEST_SUITE("maps") {

TEST_CASE("tent map on a divisible grid") {
    auto s = Space::interval(8);
    auto t = tent_map(s, 2);
    CHECK(t.single_valued());
    CHECK(t.apply(0) == 0);
    CHECK(t.apply(2) == 4);
    CHECK(t.apply(4) == 8);
    CHECK(t.apply(6) == 4);
    CHECK(t.apply(8) == 0);
    CHECK_FALSE(t.surjective());
    CHECK_THROWS_AS(tent_map(Space::interval(9), 2), InputError);
    CHECK_THROWS_AS(tent_map(Space::circle(8), 2), InputError);
}

TEST_CASE("tent map onto a coarser grid is surjective") {
    auto z = Space::interval(16), x = Space::interval(8);
    auto r = tent_map(z, x, 2);
    CHECK(r.surjective());
    CHECK(r.apply(3) == 3);
    CHECK(r.apply(13) == 3);
}

TEST_CASE("circle degree map") {
    auto s = Space::circle(8);
    auto d = circle_degree_map(s, 2);
    CHECK(d.apply(3) == 6);
    CHECK(d.apply(5) == 2);
    auto r = circle_degree_map(s, -1);
    CHECK(r.apply(1) == 7);
    CHECK(r.surjective());
    CHECK_THROWS_AS(circle_degree_map(s, 0), InputError);
}

TEST_CASE("strict inverse transposes the table") {
    auto s = Space::interval(4);
    auto f = table_map(s, s, {{4}, {3}, {2}, {1}, {0}});
    auto g = inverse(f);
    CHECK(g.image(0) == std::vector<int>{4});
    CHECK_THROWS_AS(inverse(tent_map(s, 2)), InputError);
}

TEST_CASE("nearest inverse of T_2 has two branches") {
    auto s = Space::interval(8);
    auto g = inverse(tent_map(s, 2), Rounding::Nearest);
    CHECK(g.image(4) == std::vector<int>{2, 6});
    CHECK(g.image(8) == std::vector<int>{4});
    // odd points sit on rounding ties
    CHECK(g.image(1).size() == 4);
}

TEST_CASE("compose follows images") {
    auto s = Space::interval(8);
    auto t2 = tent_map(s, 2);
    auto c = compose(t2, t2);
    CHECK(c == tent_map(s, 4));
    auto g = inverse(t2, Rounding::Nearest);
    auto id = compose(t2, g);
    // even points have grid-exact preimages
    for (int x = 0; x <= 8; x += 2) CHECK(id.image(x) == std::vector<int>{x});
}

TEST_CASE("table validation") {
    auto s = Space::interval(2);
    CHECK_THROWS_AS(table_map(s, s, {{0}, {}, {1}}), InputError);
    CHECK_THROWS_AS(table_map(s, s, {{0}, {3}, {1}}), InputError);
    CHECK_THROWS_AS(table_map(s, s, {{0}, {1}}), InputError);
}

TEST_CASE("sequences index periodically") {
    auto s = Space::interval(12);
    MapSequence seq({tent_map(s, 2)}, {tent_map(s, 3), tent_map(s, 4)});
    CHECK(seq.at(0) == tent_map(s, 2));
    CHECK(seq.at(1) == tent_map(s, 3));
    CHECK(seq.at(4) == tent_map(s, 4));
    MapSequence fin({tent_map(s, 2)}, {});
    CHECK_THROWS_AS(fin.at(1), InputError);
    CHECK_THROWS_AS(MapSequence({tent_map(s, 2), tent_map(Space::interval(6), 2)}, {}), InputError);
}

TEST_CASE("iterate composes blocks") {
    auto s = Space::interval(12);
    auto it = iterate(autonomous(tent_map(s, 2)), 2);
    CHECK(it.at(0) == tent_map(s, 4));
    MapSequence p({}, {tent_map(s, 2), tent_map(s, 3)});
    auto it3 = iterate(p, 3);
    // blocks φ_2∘φ_1∘φ_0 then φ_5∘φ_4∘φ_3
    CHECK(it3.at(0) == compose(tent_map(s, 2), compose(tent_map(s, 3), tent_map(s, 2))));
    CHECK(it3.at(1) == compose(tent_map(s, 3), compose(tent_map(s, 2), tent_map(s, 3))));
}

TEST_CASE("selected pairs") {
    auto z = Space::interval(16), x = Space::interval(8);
    auto r = tent_map(z, x, 2);
    auto q = tent_map(z, x, 4);
    SelectedPairSequence pairs({}, {{r, q}});
    // T_4 is symmetric on both preimages of T_2, so q∘r⁻¹ = T_2
    CHECK(pairs.phi().at(0) == tent_map(x, 2));
    CHECK(pairs.psi().space()->same_as(*z));
    CHECK_THROWS_AS(SelectedPairSequence({}, {{q, tent_map(z, Space::interval(16), 1)}}), InputError);
    auto coarse = table_map(z, x, Table(17, std::vector<int>{0}));
    CHECK_THROWS_AS(SelectedPairSequence({}, {{coarse, q}}), InputError);
}

TEST_CASE("strong commutativity follows the gcd rule") {
    auto s = Space::interval(168);
    CHECK(check_strong_commutativity(tent_map(s, 2), tent_map(s, 3)));
    CHECK(check_strong_commutativity(tent_map(s, 6), tent_map(s, 7)));
    CHECK_FALSE(check_strong_commutativity(tent_map(s, 2), tent_map(s, 4)));
    CHECK_FALSE(check_strong_commutativity(tent_map(s, 2), tent_map(s, 2)));
}

TEST_CASE("semi-conjugacy") {
    auto s = Space::circle(16);
    auto phi = autonomous(circle_degree_map(s, 2));
    auto flip = circle_degree_map(s, -1);
    CHECK(check_semi_conjugacy(phi, phi, {flip}, 10));
    CHECK(check_semi_conjugacy(phi, phi, {identity_map(s)}, 10));
    auto psi = autonomous(circle_degree_map(s, 3));
    CHECK_FALSE(check_semi_conjugacy(phi, psi, {identity_map(s)}, 10));
}

}
