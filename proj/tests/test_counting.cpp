#include <doctest.h>

#include "orbitropy/counting.hpp"

#include <random>

using namespace orbitropy;

namespace {

std::size_t brute_max_separated(const ItemMetric& m, double eps) {
    std::size_t n = m.size(), best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u) s.push_back(i);
        if (s.size() > best && is_separated(m, s, eps)) best = s.size();
    }
    return best;
}

ItemMetric random_metric(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> pt(0, 16);
    std::vector<int> coords;
    for (std::size_t i = 0; i < n * 2; ++i) coords.push_back(pt(rng));
    return ItemMetric::rows(Space::interval(16), 2, coords);
}

}  // namespace

TEST_SUITE("counting") {

TEST_CASE("greedy separated and spanning sets") {
    auto m = ItemMetric::rows(Space::interval(8), 1, {0, 1, 2, 3, 4, 5, 6, 7, 8});
    auto s = greedy_separated(m, 0.25);
    CHECK(is_separated(m, s, 0.25));
    CHECK(s.size() == 3);
    auto r = greedy_spanning(m, 0.25);
    CHECK(is_spanning(m, r, 0.25));
    CHECK(r.size() == 2);
}

TEST_CASE("separation is strict") {
    auto m = ItemMetric::rows(Space::interval(4), 1, {0, 1});
    CHECK_FALSE(is_separated(m, {0, 1}, 0.25));
    CHECK(is_separated(m, {0, 1}, 0.2));
}

TEST_CASE("clique search agrees with brute force") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_metric(rng, 12);
        for (double eps : {0.1, 0.25, 0.4}) {
            auto res = exact_max_separated(m, eps);
            CHECK(res.exact);
            CHECK(res.size == brute_max_separated(m, eps));
            CHECK(is_separated(m, res.members, eps));
        }
    }
}

TEST_CASE("spanning sits between the exact maxima") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_metric(rng, 30);
        for (double eps : {0.1, 0.2, 0.3}) {
            std::size_t span = greedy_spanning(m, eps).size();
            CHECK(exact_max_separated(m, 2 * eps).size <= span);
            CHECK(span <= exact_max_separated(m, eps).size);
            CHECK(greedy_separated(m, eps).size() <= exact_max_separated(m, eps).size);
        }
    }
}

TEST_CASE("matrix metric and twins") {
    auto m = ItemMetric::matrix(3, {0, 0, 1, 0, 0, 1, 1, 1, 0});
    CHECK(exact_max_separated(m, 0.5).size == 2);
    CHECK(exact_max_separated(m, 1.0).size == 1);
}

TEST_CASE("node budget reports inexact results") {
    std::mt19937 rng(3);
    FarGraph g;
    g.n = 120;
    g.words = 2;
    g.bits.assign(g.n * g.words, 0);
    for (std::size_t a = 0; a < g.n; ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (rng() % 2) {
                g.bits[a * 2 + b / 64] |= std::uint64_t{1} << (b % 64);
                g.bits[b * 2 + a / 64] |= std::uint64_t{1} << (a % 64);
            }
    auto res = max_clique(g, 5);
    CHECK_FALSE(res.exact);
}

TEST_CASE("branch metric matches hausdorff distance of orbit trees") {
    auto s = Space::interval(8);
    auto g = inverse(tent_map(s, 2), Rounding::Nearest);
    MapSequence seq({}, {g, tent_map(s, 2), g});
    for (int n = 1; n <= 4; ++n) {
        auto d = branch_distance_matrix(seq, n);
        TupleMetric tm{s, n};
        for (int x = 0; x < s->size(); ++x)
            for (int y = 0; y < s->size(); ++y) {
                auto ox = enumerate_orbits_from(seq, n, x), oy = enumerate_orbits_from(seq, n, y);
                std::vector<std::vector<int>> a, b;
                for (std::size_t i = 0; i < ox.size(); ++i) a.emplace_back(ox.tuple(i).begin(), ox.tuple(i).end());
                for (std::size_t i = 0; i < oy.size(); ++i) b.emplace_back(oy.tuple(i).begin(), oy.tuple(i).end());
                CHECK(d[x * s->size() + y] == doctest::Approx(hausdorff_distance(a, b, tm)));
            }
    }
}

TEST_CASE("single-valued branch metric is the orbit metric") {
    auto s = Space::interval(8);
    auto seq = autonomous(tent_map(s, 2));
    auto d = branch_distance_matrix(seq, 3);
    auto orb = enumerate_orbits(seq, 3);
    TupleMetric tm{s, 3};
    CHECK(d[1 * 9 + 3] == doctest::Approx(tm(orb.tuple(1), orb.tuple(3))));
}

TEST_CASE("coincidence counts for the two-point example") {
    auto x = Space::finite({{0}});
    auto z = Space::finite({{0, 1}, {1, 0}});
    auto c = table_map(z, x, {{0}, {0}});
    SelectedPairSequence pairs({}, {{c, c}});
    auto px = partition(x, 0.5), pz = partition(z, 0.5);
    for (Engine e : {Engine::Exact, Engine::Symbolic}) {
        auto cc = coincidence_counts(pairs, pz, px, 0.5, 10, e);
        REQUIRE(cc.pair.entries.size() == 10);
        for (auto& en : cc.pair.entries) {
            CHECK(en.count == 1);
            CHECK(cc.z.entries[en.n - 1].count == BigInt(1) << en.n);
        }
    }
}

}
