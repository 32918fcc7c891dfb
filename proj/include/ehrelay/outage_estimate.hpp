#pragma once

#include <cstdint>

namespace ehrelay {

enum class OutageMethod { closed_form, quadrature, monte_carlo };

struct OutageEstimate {
    double p = 0.0;       // outage probability in [0, 1]
    double stderr_ = 0.0; // binomial standard error; 0 for analytic methods
    std::uint64_t n = 0;  // sample count; 0 for analytic methods
    OutageMethod method = OutageMethod::quadrature;
};

} // namespace ehrelay
