#include <doctest.h>

#include "orbitropy/counting.hpp"
#include "orbitropy/entropy.hpp"
#include "orbitropy/scenario.hpp"

#include <random>

using namespace orbitropy;

namespace {

MultiMap random_table(std::mt19937& rng, const SpacePtr& s, int max_branch) {
    std::uniform_int_distribution<int> pt(0, s->size() - 1), br(1, max_branch);
    Table t(s->size());
    for (auto& row : t) {
        int k = br(rng);
        for (int i = 0; i < k; ++i) row.push_back(pt(rng));
    }
    return table_map(s, s, t);
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("table sequences: symbolic counts equal grid orbit words") {
    std::mt19937 rng(1);
    auto s = Space::interval(12);
    auto part = partition(s, Rational(1, 4));
    for (int trial = 0; trial < 25; ++trial) {
        MapSequence seq({random_table(rng, s, 1)}, {random_table(rng, s, 2), random_table(rng, s, 3)});
        auto sym = realized_counts(seq, part, 5);
        for (int n = 1; n <= 5; ++n) CHECK(sym.counts[n - 1] == grid_orbit_words(seq, part, n));
    }
}

TEST_CASE("refining cells never lowers the count") {
    auto s = Space::interval(48);
    std::vector<MapSequence> cases{
        autonomous(tent_map(s, 3)),
        autonomous(MultiMap::sample(inverse_formula(tent_formula(s, s, 2)), Rounding::Nearest)),
        MapSequence({}, {tent_map(s, 2), tent_map(s, 4)}),
    };
    for (auto& seq : cases) {
        auto coarse = realized_counts(seq, partition(s, Rational(1, 4)), 6);
        auto fine = realized_counts(seq, partition(s, Rational(1, 8)), 6);
        for (int i = 0; i < 6; ++i) CHECK(fine.counts[i] >= coarse.counts[i]);
    }
}

TEST_CASE("counts are nondecreasing in n") {
    std::mt19937 rng(2);
    auto s = Space::interval(10);
    for (int trial = 0; trial < 20; ++trial) {
        auto seq = autonomous(random_table(rng, s, 3));
        auto m1 = orbit_metric(enumerate_orbits(seq, 3), s);
        auto m2 = orbit_metric(enumerate_orbits(seq, 4), s);
        CHECK(exact_max_separated(m1, 0.2).size <= exact_max_separated(m2, 0.2).size);
    }
}

TEST_CASE("greedy sets are valid on random orbit sets") {
    std::mt19937 rng(3);
    auto s = Space::interval(10);
    for (int trial = 0; trial < 20; ++trial) {
        auto seq = autonomous(random_table(rng, s, 3));
        auto m = orbit_metric(enumerate_orbits(seq, 4), s);
        for (double eps : {0.1, 0.3}) {
            CHECK(is_separated(m, greedy_separated(m, eps), eps));
            CHECK(is_spanning(m, greedy_spanning(m, eps), eps));
        }
    }
}

TEST_CASE("orbit and coincidence maxima coincide") {
    std::mt19937 rng(4);
    auto z = Space::interval(16), x = Space::interval(8);
    auto r = tent_map(z, x, 2);
    std::uniform_int_distribution<int> pt(0, 8);
    for (int trial = 0; trial < 10; ++trial) {
        Table t(17);
        for (auto& row : t) row.push_back(pt(rng));
        SelectedPairSequence pairs({}, {{r, table_map(z, x, t)}});
        for (int n = 1; n <= 4; ++n) {
            auto w = orbit_to_coincidence_projection(pairs, n);
            auto om = orbit_metric(w.orbits, x);
            auto pm = pair_metric(pairs, w.coincidences);
            for (double eps : {0.125, 0.3})
                CHECK(exact_max_separated(om, eps).size == exact_max_separated(pm, eps).size);
        }
    }
}

TEST_CASE("iterate entropy sits between h and k h") {
    auto s = Space::interval(64);
    auto seq = autonomous(tent_map(s, 2));
    EstimateConfig cfg;
    cfg.epsilons = {1.0 / 16};
    cfg.n_max = 24;
    double h = estimate_entropy({seq, std::nullopt}, Definition::HSep, cfg).value;
    for (int k : {2, 3}) {
        double hk = estimate_entropy({iterate(seq, k), std::nullopt}, Definition::HSep, cfg).value;
        CHECK(h <= hk + 0.05);
        CHECK(hk <= k * h + 0.05);
    }
}

TEST_CASE("frozen counts") {
    // confirmed against word enumeration and brute-force cliques, then pinned
    auto sc = load_scenario(std::string(SCENARIO_DIR) + "/composite.json");
    auto words = realized_counts(*sc.system.seq, partition(sc.x, 0.5), 6);
    CHECK(words.counts == std::vector<BigInt>{2, 4, 8, 16, 32, 64});
    auto s = Space::interval(32);
    auto g = autonomous(MultiMap::sample(inverse_formula(tent_formula(s, s, 2)), Rounding::Nearest));
    std::vector<std::size_t> sep;
    for (int n = 1; n <= 5; ++n) sep.push_back(exact_max_separated(orbit_metric(enumerate_orbits(g, n), s), 0.25).size);
    CHECK(sep == std::vector<std::size_t>{4, 7, 12, 21, 37});
}

}
