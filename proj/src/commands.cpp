#include "ehrelay/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace ehrelay {

namespace {

using nlohmann::json;

// Agreement thresholds for the verify triangle.
constexpr double kClosedFormRelTol = 1e-5;
constexpr double kClosedFormAbsSlack = 1e-15;
constexpr double kMcSigmas = 4.0;
constexpr double kMcAbsSlack = 1e-12;

std::vector<double> default_param_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 9; ++i) g.push_back(i / 10.0);
    return g;
}

// Round through the emitted representation so CSV and JSON carry the same value.
double round_emitted(double v) {
    if (std::isnan(v)) return v;
    return std::strtod(format_number(v).c_str(), nullptr);
}

VerifyRow verify_point(const RunConfig& cfg, const ChannelGains& gains, const std::string& name,
                       const OutageCoefficients& coeffs) {
    VerifyRow row;
    row.protocol = name;
    const auto quad = outage_quadrature(coeffs, gains.omega_sr, gains.omega_r1, gains.omega_s1,
                                        cfg.system.p1, cfg.quadrature);
    const auto closed = outage_closed_form(coeffs, gains.omega_sr, gains.omega_r1, gains.omega_s1,
                                           cfg.system.p1, cfg.series, cfg.quadrature);
    const auto mc = estimate_outage(cfg.system, gains, coeffs, cfg.mc);
    row.closed_form = closed.p;
    row.quadrature = quad.p;
    row.monte_carlo = mc.p;
    row.mc_stderr = mc.stderr_;
    const bool closed_ok =
        std::fabs(closed.p - quad.p) <= kClosedFormRelTol * quad.p + kClosedFormAbsSlack;
    // The quadrature reference carries its own tolerance; budget for it so a
    // dead-on Monte Carlo estimate at a saturated point is not flagged.
    const double quad_budget =
        4.0 * std::max(cfg.quadrature.abs_tol, cfg.quadrature.rel_tol * quad.p);
    const bool mc_ok = std::fabs(mc.p - quad.p) <= kMcSigmas * mc.stderr_ + quad_budget + kMcAbsSlack;
    row.agree = closed_ok && mc_ok;
    return row;
}

int write_output(const RunConfig& cfg, const std::string& payload) {
    if (cfg.output_path.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output path '" << cfg.output_path << "'\n";
        return kExitIo;
    }
    out << payload;
    if (!out) {
        std::cerr << "write to '" << cfg.output_path << "' failed\n";
        return kExitIo;
    }
    return kExitOk;
}

void append_field(std::string& line, double v) {
    if (std::isnan(v)) return; // null cell
    line += format_number(v);
}

} // namespace

std::string format_number(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

VerifyReport run_verify(const RunConfig& cfg) {
    cfg.validate();
    const ChannelGains gains = cfg.gains();
    const std::vector<double> grid = cfg.param_grid.empty() ? default_param_grid() : cfg.param_grid;

    VerifyReport report;
    if (cfg.protocol == ProtocolChoice::ts || cfg.protocol == ProtocolChoice::both) {
        for (double rho : grid) {
            auto row = verify_point(cfg, gains, "ts", ts_coefficients(cfg.system, TsParams{rho}));
            row.parameter = rho;
            report.all_agree = report.all_agree && row.agree;
            report.rows.push_back(std::move(row));
        }
    }
    if (cfg.protocol == ProtocolChoice::ps || cfg.protocol == ProtocolChoice::both) {
        for (double alpha : grid) {
            auto row =
                verify_point(cfg, gains, "ps", ps_coefficients(cfg.system, PsParams{alpha, alpha}));
            row.parameter = alpha;
            report.all_agree = report.all_agree && row.agree;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

SweepResult run_sweep(const RunConfig& cfg, SweepAxis axis, const std::vector<double>& grid) {
    cfg.validate();
    if (grid.empty()) throw std::invalid_argument("sweep: empty axis grid");
    OptimizeOptions opts;
    opts.quadrature = cfg.quadrature;
    opts.series = cfg.series;
    if (axis == SweepAxis::power) {
        return sweep_power(cfg.system, cfg.topology(), grid, opts);
    }
    return sweep_distance(cfg.system, cfg.d_s1, cfg.d_s2, cfg.d_12, grid, opts);
}

std::vector<OptimizeRow> run_optimize(const RunConfig& cfg, OptMethod method) {
    cfg.validate();
    const ChannelGains gains = cfg.gains();
    OptimizeOptions opts;
    opts.method = method;
    opts.quadrature = cfg.quadrature;
    opts.series = cfg.series;
    const std::string method_name = method == OptMethod::grid ? "grid" : "golden";

    std::vector<OptimizeRow> rows;
    if (cfg.protocol == ProtocolChoice::ts || cfg.protocol == ProtocolChoice::both) {
        const auto r = optimize_ts(cfg.system, gains, opts);
        rows.push_back({"ts", r.param, r.p_out, method_name});
    }
    if (cfg.protocol == ProtocolChoice::ps || cfg.protocol == ProtocolChoice::both) {
        const auto r = optimize_ps(cfg.system, gains, opts);
        rows.push_back({"ps", r.param, r.p_out, method_name});
    }
    return rows;
}

std::string verify_report_csv(const VerifyReport& report) {
    std::string out = "protocol,parameter,closed_form,quadrature,monte_carlo,mc_stderr,agree\n";
    for (const auto& r : report.rows) {
        out += r.protocol;
        out += ',';
        out += format_number(r.parameter);
        out += ',';
        out += format_number(r.closed_form);
        out += ',';
        out += format_number(r.quadrature);
        out += ',';
        out += format_number(r.monte_carlo);
        out += ',';
        out += format_number(r.mc_stderr);
        out += ',';
        out += r.agree ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string verify_report_json(const VerifyReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"protocol", r.protocol},
                        {"parameter", round_emitted(r.parameter)},
                        {"closed_form", round_emitted(r.closed_form)},
                        {"quadrature", round_emitted(r.quadrature)},
                        {"monte_carlo", round_emitted(r.monte_carlo)},
                        {"mc_stderr", round_emitted(r.mc_stderr)},
                        {"agree", r.agree}});
    }
    json doc = {{"rows", rows}, {"all_agree", report.all_agree}};
    return doc.dump(2) + "\n";
}

std::string sweep_result_csv(const SweepResult& sweep) {
    std::string out = "axis,pout_ts,pout_ps,pout_baseline,rho_opt,alpha_opt\n";
    for (std::size_t i = 0; i < sweep.axis_values.size(); ++i) {
        std::string line = format_number(sweep.axis_values[i]);
        line += ',';
        append_field(line, sweep.outage_ts_opt[i]);
        line += ',';
        append_field(line, sweep.outage_ps_opt[i]);
        line += ',';
        append_field(line, sweep.outage_baseline[i]);
        line += ',';
        append_field(line, sweep.rho_opt[i]);
        line += ',';
        append_field(line, sweep.alpha_opt[i]);
        out += line;
        out += '\n';
    }
    return out;
}

std::string sweep_result_json(const SweepResult& sweep) {
    const auto column = [](const std::vector<double>& values) {
        json arr = json::array();
        for (double v : values) {
            if (std::isnan(v)) {
                arr.push_back(nullptr);
            } else {
                arr.push_back(round_emitted(v));
            }
        }
        return arr;
    };
    json doc = {{"axis_name", sweep.axis_name},
                {"axis", column(sweep.axis_values)},
                {"pout_ts", column(sweep.outage_ts_opt)},
                {"pout_ps", column(sweep.outage_ps_opt)},
                {"pout_baseline", column(sweep.outage_baseline)},
                {"rho_opt", column(sweep.rho_opt)},
                {"alpha_opt", column(sweep.alpha_opt)}};
    return doc.dump(2) + "\n";
}

std::string optimize_rows_csv(const std::vector<OptimizeRow>& rows) {
    std::string out = "protocol,param_star,pout_star,method\n";
    for (const auto& r : rows) {
        out += r.protocol;
        out += ',';
        out += format_number(r.param_star);
        out += ',';
        out += format_number(r.pout_star);
        out += ',';
        out += r.method;
        out += '\n';
    }
    return out;
}

std::string optimize_rows_json(const std::vector<OptimizeRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"protocol", r.protocol},
                       {"param_star", round_emitted(r.param_star)},
                       {"pout_star", round_emitted(r.pout_star)},
                       {"method", r.method}});
    }
    return arr.dump(2) + "\n";
}

int cmd_verify(const RunConfig& cfg) {
    const VerifyReport report = run_verify(cfg);
    const std::string payload =
        cfg.format == OutputFormat::csv ? verify_report_csv(report) : verify_report_json(report);
    const int io = write_output(cfg, payload);
    if (io != kExitOk) return io;
    return report.all_agree ? kExitOk : kExitAgreement;
}

int cmd_sweep(const RunConfig& cfg, SweepAxis axis, const std::vector<double>& grid) {
    const SweepResult sweep = run_sweep(cfg, axis, grid);
    const std::string payload =
        cfg.format == OutputFormat::csv ? sweep_result_csv(sweep) : sweep_result_json(sweep);
    return write_output(cfg, payload);
}

int cmd_optimize(const RunConfig& cfg, OptMethod method) {
    const auto rows = run_optimize(cfg, method);
    const std::string payload =
        cfg.format == OutputFormat::csv ? optimize_rows_csv(rows) : optimize_rows_json(rows);
    return write_output(cfg, payload);
}

} // namespace ehrelay
