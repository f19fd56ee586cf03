#include <doctest.h>

#include "orbitropy/entropy.hpp"

#include <cmath>

using namespace orbitropy;

namespace {

CountSeries geometric(int base, int scale, int nmax) {
    CountSeries s;
    for (int n = 1; n <= nmax; ++n) s.entries.push_back({n, BigInt(scale) * pow(BigInt(base), n), true});
    return s;
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("fit recovers geometric growth") {
    auto f = fit_rate(geometric(3, 1, 20), 10);
    CHECK(f.rate == doctest::Approx(std::log(3.0)));
    CHECK(f.endpoint_rate == doctest::Approx(std::log(3.0)).epsilon(0.01));
    CHECK(f.residual == doctest::Approx(0).epsilon(1e-9));
    CHECK(f.n_hi == 20);
    CHECK(f.n_lo == 11);
}

TEST_CASE("fit slope ignores constant factors") {
    for (int scale : {1, 7, 1000}) CHECK(fit_rate(geometric(2, scale, 30), 10).rate == doctest::Approx(std::log(2.0)));
}

TEST_CASE("fit needs enough exact entries") {
    CHECK_THROWS_AS(fit_rate(geometric(2, 1, 5), 10), InputError);
    CHECK_THROWS_AS(fit_rate(geometric(2, 1, 30), 1), InputError);
    auto s = geometric(2, 1, 20);
    s.entries.back().exact = false;
    CHECK_NOTHROW(fit_rate(s, 10));
}

TEST_CASE("definition tags round trip") {
    for (Definition d : {Definition::HSep, Definition::HSpan, Definition::HAKEK, Definition::HPair, Definition::HZ,
                         Definition::HP, Definition::HM, Definition::HI, Definition::HPZ, Definition::HMZ,
                         Definition::HIZ})
        CHECK(parse_definition(tag(d)) == d);
    CHECK(csv_label(Definition::HSep) == "h");
    CHECK(csv_label(Definition::HAKEK) == "AKEK");
    CHECK_THROWS_AS(parse_definition("h_top"), InputError);
    CHECK(needs_pairs(Definition::HZ));
    CHECK_FALSE(needs_pairs(Definition::HP));
}

TEST_CASE("degree bound closed form") {
    CHECK(degree_lower_bound({{}, {2}}, 60).value == doctest::Approx(std::log(2.0)));
    CHECK(degree_lower_bound({{}, {-3}}, 60).value == doctest::Approx(std::log(3.0)));
    CHECK(degree_lower_bound({{}, {1}}, 60).value == 0.0);
    CHECK(degree_lower_bound({{}, {-1}}, 60).value == 0.0);
    CHECK(degree_lower_bound({{5}, {2, 3}}, 60).value == doctest::Approx(0.5 * std::log(6.0)));
    CHECK(degree_lower_bound({{}, {2}}, 60).horizon_value == doctest::Approx(std::log(2.0)).epsilon(0.02));
    CHECK_THROWS_AS(degree_lower_bound({{}, {0}}, 60), InputError);
}

TEST_CASE("tent entropies, symbolic") {
    auto s = Space::interval(64);
    System sys{autonomous(tent_map(s, 2)), std::nullopt};
    EstimateConfig cfg;
    cfg.epsilons = {1.0 / 16};
    cfg.n_max = 30;
    auto e = estimate_entropy(sys, Definition::HSep, cfg);
    CHECK(e.value == doctest::Approx(std::log(2.0)).epsilon(0.01));
    CHECK(e.exact);
    auto a = estimate_entropy(sys, Definition::HAKEK, cfg);
    CHECK(a.value == doctest::Approx(e.value));
}

TEST_CASE("exact engine on a small system") {
    auto s = Space::interval(64);
    System sys{autonomous(tent_map(s, 2)), std::nullopt};
    EstimateConfig cfg;
    cfg.engine = Engine::Exact;
    cfg.epsilons = {0.125};
    cfg.n_max = 8;
    cfg.window = 5;
    auto sep = estimate_entropy(sys, Definition::HSep, cfg);
    auto p = estimate_entropy(sys, Definition::HP, cfg);
    auto m = estimate_entropy(sys, Definition::HM, cfg);
    // short orbits underestimate, but the rate stays within the crude bound
    CHECK(sep.value > 0.0);
    CHECK(sep.value <= std::log(2.0) + 0.15);
    CHECK(p.value == 0.0);
    CHECK(m.value == 0.0);
    cfg.engine = Engine::Symbolic;
    CHECK_THROWS_AS(estimate_entropy(sys, Definition::HI, cfg), InputError);
}

TEST_CASE("estimate is the max over epsilons") {
    auto s = Space::interval(64);
    System sys{autonomous(tent_map(s, 2)), std::nullopt};
    EstimateConfig cfg;
    cfg.epsilons = {0.25, 1.0 / 16};
    cfg.n_max = 20;
    auto e = estimate_entropy(sys, Definition::HSep, cfg);
    REQUIRE(e.per_epsilon.size() == 2);
    double best = 0;
    for (auto& r : e.per_epsilon) best = std::max(best, r.fit.rate);
    CHECK(e.value == best);
}

TEST_CASE("pairs are required for coincidence definitions") {
    System sys{autonomous(tent_map(Space::interval(8), 2)), std::nullopt};
    CHECK_THROWS_AS(estimate_entropy(sys, Definition::HPair, {}), InputError);
}

TEST_CASE("state cap with no fitted epsilon is a cap error") {
    auto s = Space::interval(56);
    auto f = compose_formula({tent_formula(s, s, 8), inverse_formula(tent_formula(s, s, 7))});
    System sys{autonomous(MultiMap::sample(f, Rounding::Nearest)), std::nullopt};
    EstimateConfig cfg;
    cfg.epsilons = {1.0 / 56};
    cfg.n_max = 40;
    cfg.symbolic.state_cap = 50;
    cfg.symbolic.allow_backward = false;
    CHECK_THROWS_AS(estimate_entropy(sys, Definition::HAKEK, cfg), CapError);
}

TEST_CASE("inequality helper") {
    CHECK(check_le("a", 1.0, 1.04, 0.05).pass);
    CHECK(check_le("a", 1.1, 1.0, 0.05).pass == false);
    CHECK(skipped_check("a", "why").skipped);
}

}
