#include "ehrelay/optimizer.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace ehrelay {

namespace {

double ts_objective(const SystemConfig& cfg, const ChannelGains& gains, double rho,
                    const QuadratureSpec& spec) {
    const auto coeffs = ts_coefficients(cfg, TsParams{rho});
    return outage_quadrature(coeffs, gains.omega_sr, gains.omega_r1, gains.omega_s1, cfg.p1, spec).p;
}

double ps_objective(const SystemConfig& cfg, const ChannelGains& gains, double alpha,
                    const QuadratureSpec& spec) {
    const auto coeffs = ps_coefficients(cfg, PsParams{alpha, alpha});
    return outage_quadrature(coeffs, gains.omega_sr, gains.omega_r1, gains.omega_s1, cfg.p1, spec).p;
}

double grid_minimize(const std::function<double(double)>& f, int resolution, double& best_param) {
    double best = std::numeric_limits<double>::infinity();
    best_param = kParamLo;
    for (int i = 0; i < resolution; ++i) {
        const double x = kParamLo + (kParamHi - kParamLo) * i / (resolution - 1.0);
        const double v = f(x);
        if (v < best) { // strict: ties keep the smallest parameter
            best = v;
            best_param = x;
        }
    }
    return best;
}

double golden_minimize(const std::function<double(double)>& f, double tol, double& best_param) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = kParamLo;
    double b = kParamHi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    best_param = 0.5 * (a + b);
    return f(best_param);
}

OptimizeResult minimize(const std::function<double(double)>& objective,
                        const std::function<OutageEstimate(double)>& closed_at,
                        const OptimizeOptions& opts) {
    OptimizeResult result;
    if (opts.method == OptMethod::grid) {
        if (opts.grid_resolution < 32) throw std::invalid_argument("optimize: grid resolution >= 32 required");
        result.p_out = grid_minimize(objective, opts.grid_resolution, result.param);
    } else {
        if (!(opts.golden_tol > 0.0 && opts.golden_tol <= 1e-4)) {
            throw std::invalid_argument("optimize: golden tolerance must be in (0, 1e-4]");
        }
        result.p_out = golden_minimize(objective, opts.golden_tol, result.param);
    }
    result.p_out_closed = closed_at(result.param).p;
    return result;
}

} // namespace

OptimizeResult optimize_ts(const SystemConfig& cfg, const ChannelGains& gains,
                           const OptimizeOptions& opts) {
    cfg.validate();
    return minimize(
        [&](double rho) { return ts_objective(cfg, gains, rho, opts.quadrature); },
        [&](double rho) {
            const auto coeffs = ts_coefficients(cfg, TsParams{rho});
            return outage_closed_form(coeffs, gains.omega_sr, gains.omega_r1, gains.omega_s1,
                                      cfg.p1, opts.series, opts.quadrature);
        },
        opts);
}

OptimizeResult optimize_ps(const SystemConfig& cfg, const ChannelGains& gains,
                           const OptimizeOptions& opts) {
    cfg.validate();
    return minimize(
        [&](double alpha) { return ps_objective(cfg, gains, alpha, opts.quadrature); },
        [&](double alpha) {
            const auto coeffs = ps_coefficients(cfg, PsParams{alpha, alpha});
            return outage_closed_form(coeffs, gains.omega_sr, gains.omega_r1, gains.omega_s1,
                                      cfg.p1, opts.series, opts.quadrature);
        },
        opts);
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void append_cell(SweepResult& out, double axis, const SystemConfig& cfg, const ChannelGains& gains,
                 const OptimizeOptions& opts) {
    const auto ts = optimize_ts(cfg, gains, opts);
    const auto ps = optimize_ps(cfg, gains, opts);
    const auto baseline = outage_noncooperative(cfg.p1, gains.omega_s1, cfg.rt);
    out.axis_values.push_back(axis);
    out.outage_ts_opt.push_back(ts.p_out);
    out.outage_ps_opt.push_back(ps.p_out);
    out.outage_baseline.push_back(baseline.p);
    out.rho_opt.push_back(ts.param);
    out.alpha_opt.push_back(ps.param);
}

} // namespace

SweepResult sweep_power(const SystemConfig& cfg_template, const Topology& topology,
                        const std::vector<double>& ps_grid_db, const OptimizeOptions& opts) {
    SweepResult out;
    out.axis_name = "ps_db";
    const ChannelGains gains = mean_channel_gains(topology, cfg_template.m);
    const std::size_t cells = ps_grid_db.size();

    // Cells are independent; evaluate then assemble in axis order.
    std::vector<SweepResult> partial(cells);
    std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < cells; ++i) {
        try {
            SystemConfig cfg = cfg_template;
            cfg.p1 = cfg.p2 = std::pow(10.0, ps_grid_db[i] / 10.0);
            append_cell(partial[i], ps_grid_db[i], cfg, gains, opts);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = 0; i < cells; ++i) {
        out.axis_values.push_back(partial[i].axis_values[0]);
        out.outage_ts_opt.push_back(partial[i].outage_ts_opt[0]);
        out.outage_ps_opt.push_back(partial[i].outage_ps_opt[0]);
        out.outage_baseline.push_back(partial[i].outage_baseline[0]);
        out.rho_opt.push_back(partial[i].rho_opt[0]);
        out.alpha_opt.push_back(partial[i].alpha_opt[0]);
    }
    return out;
}

SweepResult sweep_distance(const SystemConfig& cfg, double d_s1, double d_s2, double d_12,
                           const std::vector<double>& d_sr_grid, const OptimizeOptions& opts) {
    SweepResult out;
    out.axis_name = "d_sr";
    const std::size_t cells = d_sr_grid.size();

    std::vector<SweepResult> partial(cells);
    std::vector<bool> valid(cells, false);
    std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < cells; ++i) {
        try {
            const Topology topo = place_relay_on_height(d_sr_grid[i], d_s1, d_s2, d_12);
            const ChannelGains gains = mean_channel_gains(topo, cfg.m);
            append_cell(partial[i], d_sr_grid[i], cfg, gains, opts);
            valid[i] = true;
        } catch (const GeometryError&) {
            valid[i] = false; // recorded as a NaN row below
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = 0; i < cells; ++i) {
        out.axis_values.push_back(d_sr_grid[i]);
        if (valid[i]) {
            out.outage_ts_opt.push_back(partial[i].outage_ts_opt[0]);
            out.outage_ps_opt.push_back(partial[i].outage_ps_opt[0]);
            out.outage_baseline.push_back(partial[i].outage_baseline[0]);
            out.rho_opt.push_back(partial[i].rho_opt[0]);
            out.alpha_opt.push_back(partial[i].alpha_opt[0]);
        } else {
            out.outage_ts_opt.push_back(kNan);
            out.outage_ps_opt.push_back(kNan);
            out.outage_baseline.push_back(kNan);
            out.rho_opt.push_back(kNan);
            out.alpha_opt.push_back(kNan);
        }
    }
    return out;
}

} // namespace ehrelay
