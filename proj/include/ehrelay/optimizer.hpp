#pragma once

#include <string>
#include <vector>

#include "ehrelay/analytics.hpp"
#include "ehrelay/network.hpp"
#include "ehrelay/protocols.hpp"

namespace ehrelay {

enum class OptMethod { grid, golden };

// Parameter domain for both protocols; the closed endpoints are excluded
// because they degenerate the coefficient formulas.
inline constexpr double kParamLo = 0.001;
inline constexpr double kParamHi = 0.999;

struct OptimizeOptions {
    OptMethod method = OptMethod::grid;
    int grid_resolution = 256;
    double golden_tol = 1e-4;
    QuadratureSpec quadrature{};
    SeriesPolicy series{};
};

struct OptimizeResult {
    double param = 0.0;         // rho* or alpha*
    double p_out = 1.0;         // quadrature-path outage at the optimum
    double p_out_closed = 1.0;  // closed-form re-evaluation at the optimum
};

// Minimize the quadrature-path outage over rho (TS) or alpha1 = alpha2 =
// alpha (PS). Grid search is the default; golden-section assumes the
// objective is unimodal and is the opt-in accelerator. Ties resolve to the
// smallest parameter.
OptimizeResult optimize_ts(const SystemConfig& cfg, const ChannelGains& gains,
                           const OptimizeOptions& opts = {});
OptimizeResult optimize_ps(const SystemConfig& cfg, const ChannelGains& gains,
                           const OptimizeOptions& opts = {});

// One row per axis value; NaN entries mark cells whose geometry was invalid.
struct SweepResult {
    std::string axis_name;
    std::vector<double> axis_values;
    std::vector<double> outage_ts_opt;
    std::vector<double> outage_ps_opt;
    std::vector<double> outage_baseline;
    std::vector<double> rho_opt;
    std::vector<double> alpha_opt;
};

// Optimal outage of both protocols plus the non-cooperative baseline against
// the common source power, p1 = p2 = 10^(db/10). Geometry is fixed.
SweepResult sweep_power(const SystemConfig& cfg_template, const Topology& topology,
                        const std::vector<double>& ps_grid_db, const OptimizeOptions& opts = {});

// Same against the source-relay distance; the relay is re-placed on the
// altitude of the (d_s1, d_s2, d_12) triangle for every grid value.
SweepResult sweep_distance(const SystemConfig& cfg, double d_s1, double d_s2, double d_12,
                           const std::vector<double>& d_sr_grid, const OptimizeOptions& opts = {});

} // namespace ehrelay
