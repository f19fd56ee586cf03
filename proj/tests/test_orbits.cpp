#include <doctest.h>

#include "orbitropy/orbits.hpp"

#include <functional>

using namespace orbitropy;

namespace {

// naive recursive enumeration for comparison
std::size_t naive_orbits(const MapSequence& seq, int n) {
    std::function<std::size_t(int, int)> go = [&](int x, int j) -> std::size_t {
        if (j + 1 == n) return 1;
        std::size_t s = 0;
        std::vector<int> img = seq.at(j).image(x);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        for (int y : img) s += go(y, j + 1);
        return s;
    };
    std::size_t total = 0;
    for (int x = 0; x < seq.space()->size(); ++x) total += go(x, 0);
    return total;
}

}  // namespace

TEST_SUITE("orbits") {

TEST_CASE("single-valued maps have one orbit per start") {
    auto s = Space::interval(8);
    auto orb = enumerate_orbits(autonomous(tent_map(s, 2)), 5);
    CHECK(orb.arity == 5);
    CHECK(orb.size() == 9);
    auto t = orb.tuple(*orb.find(std::vector<int>{1, 2, 4, 8, 0}));
    CHECK(t[3] == 8);
}

TEST_CASE("orbit counts match naive recursion") {
    auto s = Space::interval(16);
    auto g = inverse(tent_map(s, 2), Rounding::Nearest);
    MapSequence seq({}, {g, tent_map(s, 2)});
    for (int n = 1; n <= 6; ++n) CHECK(enumerate_orbits(seq, n).size() == naive_orbits(seq, n));
}

TEST_CASE("orbits are sorted and distinct") {
    auto s = Space::interval(8);
    auto orb = enumerate_orbits(autonomous(inverse(tent_map(s, 2), Rounding::Nearest)), 4);
    for (std::size_t i = 1; i < orb.size(); ++i) {
        auto a = orb.tuple(i - 1), b = orb.tuple(i);
        CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
    }
}

TEST_CASE("cap marks truncation") {
    auto s = Space::interval(8);
    auto orb = enumerate_orbits(autonomous(inverse(tent_map(s, 2), Rounding::Nearest)), 6, 10);
    CHECK(orb.truncated);
    CHECK(orb.size() <= 10);
}

TEST_CASE("orbits from a point") {
    auto s = Space::interval(8);
    auto g = inverse(tent_map(s, 2), Rounding::Nearest);
    auto orb = enumerate_orbits_from(autonomous(g), 4, 4);
    for (std::size_t i = 0; i < orb.size(); ++i) CHECK(orb.tuple(i)[0] == 4);
    std::size_t total = 0;
    for (int x = 0; x <= 8; ++x) total += enumerate_orbits_from(autonomous(g), 4, x).size();
    CHECK(total == enumerate_orbits(autonomous(g), 4).size());
}

TEST_CASE("coincidences project onto orbits") {
    auto z = Space::interval(16), x = Space::interval(8);
    SelectedPairSequence pairs({}, {{tent_map(z, x, 2), MultiMap::sample(tent_formula(z, x, 3), Rounding::Nearest)}});
    for (int n = 1; n <= 4; ++n) {
        auto w = orbit_to_coincidence_projection(pairs, n);
        CHECK(w.orbits.arity == n + 1);
        CHECK(w.coincidences.arity == n);
        CHECK(w.image.size() == w.coincidences.size());
        // every coincidence satisfies q_i z_i = r_{i+1} z_{i+1}
        for (std::size_t i = 0; i < w.coincidences.size(); ++i) {
            auto c = w.coincidences.tuple(i);
            for (int j = 0; j + 1 < n; ++j) CHECK(pairs.at(j).q.apply(c[j]) == pairs.at(j + 1).r.apply(c[j + 1]));
        }
    }
}

TEST_CASE("pair distance uses both images") {
    auto z = Space::interval(16), x = Space::interval(8);
    SelectedPairSequence pairs({}, {{tent_map(z, x, 2), tent_map(z, x, 4)}});
    std::vector<int> a{3}, b{13};
    // r and q agree on the symmetric pair, so they are p*-twins
    CHECK(pair_tuple_distance(pairs, 1, a, b) == 0.0);
    std::vector<int> c{0};
    CHECK(pair_tuple_distance(pairs, 1, a, c) == doctest::Approx(0.75));
}

}
