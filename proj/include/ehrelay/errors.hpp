#pragma once

#include <stdexcept>
#include <string>

namespace ehrelay {

// Raised when an adaptive routine exhausts its budget before reaching the
// requested tolerance. Carries the best estimate seen so far and the
// residual error bound so callers can decide whether to keep it.
struct ConvergenceError : std::runtime_error {
    double best_estimate;
    double error_bound;

    ConvergenceError(const std::string& what, double best, double bound)
        : std::runtime_error(what), best_estimate(best), error_bound(bound) {}
};

struct GeometryError : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace ehrelay
