#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace asgard {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Absolute tolerance for membership tests on indicator-function domains.
inline constexpr double kDomainTol = 1e-12;

// Caller passed arguments that violate an operation's preconditions.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An optional capability (conjugate value, conjugate argmax, ...) was
// requested from an object that does not provide it.
struct CapabilityError : std::logic_error {
    using std::logic_error::logic_error;
};

// A non-finite value surfaced inside an iterative computation.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }

inline double sqr(double t) { return t * t; }

}  // namespace asgard
