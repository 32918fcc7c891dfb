#pragma once

#include <cstdint>
#include <span>

#include "ehrelay/network.hpp"
#include "ehrelay/outage_estimate.hpp"
#include "ehrelay/protocols.hpp"

namespace ehrelay {

struct McRunSpec {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 12345;
    int n_streams = 4; // parallel fan-out; estimates do not depend on it

    void validate() const;
};

// One channel realization: |h|^2 draws for the source-relay, relay-destination
// and source-destination links. Exponential with mean omega via the inverse
// transform -omega * ln(U), keyed by (seed, index) so any decomposition of
// the index range reproduces the same stream.
struct ChannelDraw {
    double x_sr = 0.0;
    double x_r1 = 0.0;
    double x_s1 = 0.0;
};

ChannelDraw draw_channel_sample(std::uint64_t seed, std::uint64_t index, const ChannelGains& gains);

// Outage frequency of the event gamma0 + gamma1 < r0 over n_samples draws.
// OpenMP-parallel kernel; bit-identical to estimate_outage_serial for the
// same (seed, n_samples) regardless of thread count.
OutageEstimate estimate_outage(const SystemConfig& cfg, const ChannelGains& gains,
                               const OutageCoefficients& coeffs, const McRunSpec& run);

// Plain-loop reference implementation.
OutageEstimate estimate_outage_serial(const SystemConfig& cfg, const ChannelGains& gains,
                                      const OutageCoefficients& coeffs, const McRunSpec& run);

// Draws Z = a*X*Y/(b*X + c) and returns the largest deviation between the
// empirical CDF and cdf_z over the given grid. Requires a > 0.
double empirical_cdf_check(const OutageCoefficients& coeffs, const ChannelGains& gains,
                           const McRunSpec& run, std::span<const double> z_grid);

} // namespace ehrelay
