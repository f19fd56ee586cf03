#include <doctest.h>

#include "orbitropy/scenario.hpp"

#include <cmath>

using namespace orbitropy;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_scenario(text, "t.json");
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

const char* kTent = R"({
  "schema": "orbitropy/1",
  "id": "t",
  "space": {"kind": "interval", "grid_size": 16},
  "sequence": {"period": [{"kind": "tent", "k": 2}]},
  "run": {"epsilons": [0.25], "n_max": 20, "window": 8},
  "expected": [{"definition": "h_sep", "value": 0.6931471805599453, "tolerance": 0.05}]
})";

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("parses a tent scenario") {
    auto sc = parse_scenario(kTent, "t.json");
    CHECK(sc.id == "t");
    CHECK(sc.x->grid_size() == 16);
    REQUIRE(sc.system.seq);
    CHECK(sc.system.seq->at(3) == tent_map(sc.x, 2));
    CHECK(sc.run.window == 8);
    REQUIRE(sc.expected.size() == 1);
    CHECK(sc.expected[0].tolerance == 0.05);
}

TEST_CASE("malformed JSON names the line") {
    auto e = error_of("{\n  \"schema\": \"orbitropy/1\",\n  \"id\": \"x\"\n  \"space\": 1\n}");
    CHECK(e.find("t.json:4:") == 0);
    CHECK(e.find("malformed JSON") != std::string::npos);
}

TEST_CASE("unknown fields are rejected with their line") {
    std::string s = kTent;
    s.insert(s.find("\"run\""), "\"extra\": true,\n  ");
    auto e = error_of(s);
    CHECK(e.find("t.json:6:") == 0);
    CHECK(e.find("/extra") != std::string::npos);
}

TEST_CASE("validation errors point into the document") {
    std::string s = kTent;
    s.replace(s.find("\"k\": 2"), 6, "\"k\": 3");
    auto e = error_of(s);
    CHECK(e.find("t.json:5:") == 0);
    std::string w = kTent;
    w.replace(w.find("\"window\": 8"), 11, "\"window\": 1");
    CHECK(error_of(w).find("t.json:6:") == 0);
    std::string schema = kTent;
    schema.replace(schema.find("orbitropy/1"), 11, "orbitropy/9");
    CHECK(error_of(schema).find("t.json:2:") == 0);
}

TEST_CASE("sequence and pairs are exclusive") {
    std::string s = kTent;
    s.insert(s.find("\"run\""), "\"pairs\": {\"period\": []},\n  ");
    CHECK_FALSE(error_of(s).empty());
}

TEST_CASE("compose lists maps in mathematical order") {
    std::string s = R"({
  "schema": "orbitropy/1", "id": "c",
  "space": {"kind": "interval", "grid_size": 24},
  "sequence": {"period": [{"kind": "compose", "maps": [{"kind": "tent", "k": 3}, {"kind": "tent", "k": 2}]}]}
})";
    auto sc = parse_scenario(s);
    CHECK(sc.system.seq->at(0) == compose(tent_map(sc.x, 3), tent_map(sc.x, 2)));
}

TEST_CASE("run and report") {
    auto sc = parse_scenario(kTent, "t.json");
    auto out = run_scenario(sc);
    REQUIRE(out.estimates.size() == 1);
    CHECK(out.estimates[0].value == doctest::Approx(std::log(2.0)).epsilon(0.05));
    auto csv = render_csv(sc, out);
    CHECK(csv.rfind("scenario_id,definition,engine,epsilon,n,count,exactness\n", 0) == 0);
    CHECK(csv.find("t,h,symbolic,0.25,20,") != std::string::npos);
    auto js = render_report(sc, out);
    CHECK(js["estimates"][0]["definition"] == "h_sep");
    auto checks = verify_scenario(sc);
    REQUIRE(checks.size() == 1);
    CHECK(checks[0].pass);
}

TEST_CASE("overrides replace run settings") {
    auto sc = parse_scenario(kTent, "t.json");
    Overrides ov;
    ov.n_max = 12;
    auto out = run_scenario(sc, ov);
    CHECK(out.estimates[0].per_epsilon[0].fit.n_hi == 12);
}

TEST_CASE("bundled example is exact") {
    auto sc = load_scenario(std::string(SCENARIO_DIR) + "/two_point.json");
    auto out = run_scenario(sc);
    REQUIRE(out.estimates.size() == 2);
    CHECK(out.estimates[0].value == 0.0);
    CHECK(std::abs(out.estimates[1].value - std::log(2.0)) <= 1e-9);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/x.json"), InputError);
}

}
