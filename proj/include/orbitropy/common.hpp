#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace orbitropy {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Absolute tolerance for all real-valued distance comparisons.
inline constexpr double kTol = 1e-12;

inline bool farther(double d, double eps) { return d > eps + kTol; }
inline bool within(double d, double eps) { return d <= eps + kTol; }

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// Raised when an enumeration would exceed its tuple cap and the caller
// asked for exact results only.
struct CapError : std::runtime_error {
    CapError(const std::string& what, std::string def, int n)
        : std::runtime_error(what), definition(std::move(def)), n(n) {}
    std::string definition;
    int n;
};

Rational to_rational(double x);
double log_big(const BigInt& v);
std::string to_string(const Rational& r);

}  // namespace orbitropy
