#pragma once

#include "orbitropy/counting.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbitropy {

struct RateFit {
    double rate = 0;
    double endpoint_rate = 0;
    double residual = 0;
    int n_lo = 0, n_hi = 0;
};

RateFit fit_rate(const CountSeries& series, int window);

enum class Definition { HSep, HSpan, HAKEK, HPair, HZ, HP, HM, HI, HPZ, HMZ, HIZ };

std::string tag(Definition d);
std::string csv_label(Definition d);
Definition parse_definition(const std::string& s);
bool needs_pairs(Definition d);
bool pointwise(Definition d);

struct System {
    std::optional<MapSequence> seq;
    std::optional<SelectedPairSequence> pairs;
};

struct EstimateConfig {
    std::vector<double> epsilons;  // empty: 2^-1..2^-7 of the diameter
    int n_max = 0;                 // 0: 60 symbolic, 8 exact
    Engine engine = Engine::Symbolic;
    int window = 10;
    std::size_t cap = kDefaultCap;
    SymbolicOptions symbolic;
    int jobs = 1;
};

struct LabeledSeries {
    std::string label;
    CountSeries series;
};

struct EpsilonResult {
    double epsilon = 0;
    bool fitted = false;
    RateFit fit;
    std::string note;
};

struct EntropyEstimate {
    Definition definition = Definition::HSep;
    double value = 0;
    int window = 0;
    Engine engine = Engine::Symbolic;
    bool exact = true;
    std::vector<EpsilonResult> per_epsilon;
    std::vector<LabeledSeries> series;
    double crude_bound = 0;
};

std::vector<double> default_epsilons(const Space& space);
EntropyEstimate estimate_entropy(const System& sys, Definition def, const EstimateConfig& cfg);

struct DegreeBoundInput {
    std::vector<long> prefix;
    std::vector<long> period;
};

struct DegreeBound {
    double value = 0;          // closed form for eventually periodic input, else the horizon value
    double horizon_value = 0;  // finite-N surrogate over a tail window
};

DegreeBound degree_lower_bound(const DegreeBoundInput& input, int horizon);

struct InequalityResult {
    std::string name;
    double lhs = 0, rhs = 0, tolerance = 0;
    bool pass = false;
    bool skipped = false;
    std::string reason;
};

InequalityResult check_le(std::string name, double lhs, double rhs, double tol);
InequalityResult skipped_check(std::string name, std::string reason);

}  // namespace orbitropy
