#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace koenigs {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct domain_error : error {
    using error::error;
};

// A series or iteration failed to reach its tolerance.
struct convergence_error : error {
    using error::error;
};

// Evaluation would lose too many digits to be trusted.
struct precision_error : error {
    using error::error;
};

// Invalid run configuration (CLI layer maps this to exit code 2).
struct config_error : error {
    using error::error;
};

// A cross-check between two independent routes failed (exit code 4).
struct validation_error : error {
    using error::error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed real interval; +-inf endpoints mark unbounded sides.
struct Interval {
    double lo = -kInf;
    double hi = kInf;

    bool contains(double x) const { return x >= lo && x <= hi; }
    bool empty() const { return !(lo <= hi); }
};

} // namespace koenigs
