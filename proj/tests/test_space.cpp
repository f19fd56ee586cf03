#include <doctest.h>

#include "orbitropy/region.hpp"
#include "orbitropy/space.hpp"

using namespace orbitropy;

TEST_SUITE("space") {

TEST_CASE("interval grid distances") {
    auto s = Space::interval(8);
    CHECK(s->size() == 9);
    CHECK(s->distance(0, 8) == doctest::Approx(1.0));
    CHECK(s->distance(2, 5) == doctest::Approx(0.375));
    CHECK(s->coordinate(4) == Rational(1, 2));
    CHECK(s->diameter() == doctest::Approx(1.0));
}

TEST_CASE("circle distance wraps") {
    auto s = Space::circle(8);
    CHECK(s->size() == 8);
    CHECK(s->distance(0, 7) == doctest::Approx(0.125));
    CHECK(s->distance(1, 5) == doctest::Approx(0.5));
    CHECK(s->diameter() == doctest::Approx(0.5));
}

TEST_CASE("finite space validation") {
    CHECK_THROWS_AS(Space::finite({{0, 1}, {2, 0}}), InputError);
    CHECK_THROWS_AS(Space::finite({{1, 1}, {1, 0}}), InputError);
    CHECK_THROWS_AS(Space::finite({{0, 1}}), InputError);
    auto s = Space::finite({{0, 1}, {1, 0}});
    CHECK(s->distance(0, 1) == 1.0);
    CHECK_THROWS_AS(s->distance(0, 2), InputError);
}

TEST_CASE("tuple metric is the max metric") {
    auto s = Space::interval(4);
    TupleMetric m{s, 3};
    std::vector<int> a{0, 1, 2}, b{1, 1, 4};
    CHECK(m(a, b) == doctest::Approx(0.5));
    std::vector<int> c{0, 1};
    CHECK_THROWS_AS(tuple_distance(m, a, c), InputError);
}

TEST_CASE("cells partition the interval grid") {
    auto s = Space::interval(8);
    auto p = partition(s, Rational(1, 4));
    CHECK(p.cell_count() == 4);
    // [0,e], (e,2e], ...
    CHECK(p.cell_of_point(0) == 0);
    CHECK(p.cell_of_point(2) == 0);
    CHECK(p.cell_of_point(3) == 1);
    CHECK(p.cell_of_point(8) == 3);
    CHECK_THROWS_AS(partition(s, Rational(1, 16)), InputError);
}

TEST_CASE("cells on the circle are half-open from the left") {
    auto p = partition(Space::circle(8), Rational(1, 4));
    CHECK(p.cell_count() == 4);
    CHECK(p.cell_of_point(1) == 0);
    CHECK(p.cell_of_point(2) == 1);
}

TEST_CASE("hausdorff distance") {
    auto s = Space::interval(8);
    TupleMetric m{s, 1};
    std::vector<std::vector<int>> a{{0}, {8}}, b{{1}};
    CHECK(hausdorff_distance(a, b, m) == doctest::Approx(7.0 / 8));
    CHECK(hausdorff_distance(a, a, m) == 0.0);
    CHECK_THROWS_AS(hausdorff_distance(a, {}, m), InputError);
}

TEST_CASE("regions clip to cells") {
    auto s = Space::interval(8);
    auto p = partition(s, Rational(1, 2));
    Region full = full_region(*s);
    CHECK(cells_met(full, p) == std::vector<int>{0, 1});
    Region left = clip(full, p, 0);
    CHECK(left.contains(Rational(1, 4)));
    CHECK_FALSE(left.contains(Rational(3, 4)));
    CHECK(grid_points_in(grid_points_region(p, 1), *s) == std::vector<int>{5, 6, 7, 8});
}

}
