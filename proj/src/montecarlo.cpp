#include "ehrelay/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ehrelay/analytics.hpp"
#include "ehrelay/philox.hpp"

namespace ehrelay {

namespace {

int thread_fanout(const McRunSpec& run) {
#ifdef _OPENMP
    return std::max(1, std::min(run.n_streams, omp_get_max_threads()));
#else
    (void)run;
    return 1;
#endif
}

OutageEstimate finish_estimate(std::uint64_t outage_count, std::uint64_t n) {
    const double p = static_cast<double>(outage_count) / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return {p, se, n, OutageMethod::monte_carlo};
}

} // namespace

void McRunSpec::validate() const {
    if (n_samples < 1) throw std::invalid_argument("McRunSpec: n_samples >= 1 required");
    if (n_streams < 1) throw std::invalid_argument("McRunSpec: n_streams >= 1 required");
}

ChannelDraw draw_channel_sample(std::uint64_t seed, std::uint64_t index, const ChannelGains& gains) {
    const auto u = rng::uniform_triple(seed, index);
    return {-gains.omega_sr * std::log(u[0]),
            -gains.omega_r1 * std::log(u[1]),
            -gains.omega_s1 * std::log(u[2])};
}

OutageEstimate estimate_outage(const SystemConfig& cfg, const ChannelGains& gains,
                               const OutageCoefficients& coeffs, const McRunSpec& run) {
    cfg.validate();
    coeffs.validate();
    run.validate();

    const std::int64_t n = static_cast<std::int64_t>(run.n_samples);
    const int fanout = thread_fanout(run);
    std::uint64_t outage_count = 0;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(fanout) reduction(+ : outage_count)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        const ChannelDraw d = draw_channel_sample(run.seed, static_cast<std::uint64_t>(i), gains);
        const double gamma0 = cfg.p1 * d.x_s1;
        const double gamma1 = instantaneous_relay_snr(coeffs, d.x_sr, d.x_r1);
        if (gamma0 + gamma1 < coeffs.r0) ++outage_count;
    }
    (void)fanout;
    return finish_estimate(outage_count, run.n_samples);
}

OutageEstimate estimate_outage_serial(const SystemConfig& cfg, const ChannelGains& gains,
                                      const OutageCoefficients& coeffs, const McRunSpec& run) {
    cfg.validate();
    coeffs.validate();
    run.validate();

    std::uint64_t outage_count = 0;
    for (std::uint64_t i = 0; i < run.n_samples; ++i) {
        const ChannelDraw d = draw_channel_sample(run.seed, i, gains);
        const double gamma0 = cfg.p1 * d.x_s1;
        const double gamma1 = instantaneous_relay_snr(coeffs, d.x_sr, d.x_r1);
        if (gamma0 + gamma1 < coeffs.r0) ++outage_count;
    }
    return finish_estimate(outage_count, run.n_samples);
}

double empirical_cdf_check(const OutageCoefficients& coeffs, const ChannelGains& gains,
                           const McRunSpec& run, std::span<const double> z_grid) {
    coeffs.validate();
    run.validate();
    if (!(coeffs.a > 0.0)) throw std::domain_error("empirical_cdf_check: a > 0 required");
    if (z_grid.empty()) throw std::domain_error("empirical_cdf_check: empty grid");

    std::vector<double> grid(z_grid.begin(), z_grid.end());
    std::sort(grid.begin(), grid.end());
    const std::size_t bins = grid.size();

    // Bucket counts: hist[j] = number of samples in (grid[j-1], grid[j]];
    // hist[0] covers (-inf, grid[0]]. Integer counts keep the result exact
    // under any parallel merge order.
    std::vector<std::uint64_t> hist(bins + 1, 0);
    const std::int64_t n = static_cast<std::int64_t>(run.n_samples);
    const int fanout = thread_fanout(run);

#ifdef _OPENMP
#pragma omp parallel num_threads(fanout)
#endif
    {
        std::vector<std::uint64_t> local(bins + 1, 0);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 0; i < n; ++i) {
            const ChannelDraw d = draw_channel_sample(run.seed, static_cast<std::uint64_t>(i), gains);
            const double z = instantaneous_relay_snr(coeffs, d.x_sr, d.x_r1);
            const auto it = std::lower_bound(grid.begin(), grid.end(), z);
            ++local[static_cast<std::size_t>(it - grid.begin())];
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            for (std::size_t j = 0; j <= bins; ++j) hist[j] += local[j];
        }
    }
    (void)fanout;

    double max_dev = 0.0;
    std::uint64_t cumulative = 0;
    for (std::size_t j = 0; j < bins; ++j) {
        cumulative += hist[j];
        const double empirical = static_cast<double>(cumulative) / static_cast<double>(run.n_samples);
        const double analytic = cdf_z(grid[j], coeffs, gains.omega_sr, gains.omega_r1);
        max_dev = std::max(max_dev, std::fabs(empirical - analytic));
    }
    return max_dev;
}

} // namespace ehrelay
