#pragma once

#include "orbitropy/entropy.hpp"

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace orbitropy {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "orbitropy/1";

// Maps JSON pointers to the source line where the value starts.
class LineIndex {
public:
    LineIndex() = default;
    explicit LineIndex(const std::string& text);
    int line_of(const std::string& pointer) const;

private:
    std::map<std::string, int> lines_;
};

// Validation error carrying the JSON pointer it refers to.
struct SpecError : InputError {
    SpecError(std::string pointer, const std::string& msg) : InputError(msg), pointer(std::move(pointer)) {}
    std::string pointer;
};

struct ExpectedValue {
    std::string definition;
    std::optional<double> value;
    std::optional<double> at_least;
    double tolerance = 0;
    std::string pointer;
};

struct CheckSpec {
    std::string kind;
    Json params;
    std::string pointer;
};

struct RunSpec {
    std::vector<Definition> definitions;
    std::vector<double> epsilons;
    int n_max = 0;
    std::string engine = "symbolic";
    std::size_t cap = kDefaultCap;
    std::size_t state_cap = SymbolicOptions{}.state_cap;
    int window = 10;
    std::optional<double> tolerance;
    int jobs = 1;
};

struct Scenario {
    std::string id;
    std::string path;
    SpacePtr x, z;
    Rounding rounding = Rounding::Exact;
    System system;
    std::optional<DegreeBoundInput> degrees;
    RunSpec run;
    std::vector<ExpectedValue> expected;
    std::vector<CheckSpec> checks;
    std::optional<int> oracle_n;
    LineIndex lines;

    std::string where(const std::string& pointer) const;
};

Scenario parse_scenario(const std::string& text, const std::string& path = "<scenario>");
Scenario load_scenario(const std::string& path);

// Context-dependent map parsing: from/to select X or Z.
MultiMap parse_map(const Scenario& sc, const Json& j, const std::string& pointer, SpacePtr from, SpacePtr to);
MapSequence parse_sequence(const Scenario& sc, const Json& j, const std::string& pointer);

struct Overrides {
    std::optional<std::string> engine;
    std::optional<int> n_max;
    std::optional<std::size_t> cap;
    std::optional<int> jobs;
};

struct RunOutput {
    std::vector<EntropyEstimate> estimates;
    std::optional<DegreeBound> degree_bound;
};

RunOutput run_scenario(const Scenario& sc, const Overrides& ov = {});
std::vector<InequalityResult> verify_scenario(const Scenario& sc, const Overrides& ov = {});

struct OracleResult {
    std::string name;
    std::string engine_value;
    std::string oracle_value;
    bool pass = false;
};

struct OracleLimitError : InputError {
    using InputError::InputError;
};

std::vector<OracleResult> oracle_scenario(const Scenario& sc, const Overrides& ov = {});

std::string render_csv(const Scenario& sc, const RunOutput& out);
Json render_report(const Scenario& sc, const RunOutput& out);
Json render_checks(const std::vector<InequalityResult>& checks);

}  // namespace orbitropy
