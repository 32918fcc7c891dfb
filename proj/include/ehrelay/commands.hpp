#pragma once

#include <string>
#include <vector>

#include "ehrelay/optimizer.hpp"
#include "ehrelay/run_config.hpp"

namespace ehrelay {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitAgreement = 2;
inline constexpr int kExitIo = 3;

enum class SweepAxis { power, distance };

struct VerifyRow {
    std::string protocol;
    double parameter = 0.0;
    double closed_form = 0.0;
    double quadrature = 0.0;
    double monte_carlo = 0.0;
    double mc_stderr = 0.0;
    bool agree = false;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    bool all_agree = true;
};

struct OptimizeRow {
    std::string protocol;
    double param_star = 0.0;
    double pout_star = 1.0;
    std::string method;
};

// Cross-method check on a parameter grid: closed form against quadrature to
// 1e-5 relative, Monte Carlo against quadrature to 4 standard errors.
VerifyReport run_verify(const RunConfig& cfg);

SweepResult run_sweep(const RunConfig& cfg, SweepAxis axis, const std::vector<double>& grid);

std::vector<OptimizeRow> run_optimize(const RunConfig& cfg, OptMethod method);

// Command wrappers: validate, run, serialize to cfg.output_path (stdout when
// empty) in cfg.format, and map failures onto the exit codes above.
int cmd_verify(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg, SweepAxis axis, const std::vector<double>& grid);
int cmd_optimize(const RunConfig& cfg, OptMethod method);

// 12-significant-digit formatting used for all emitted numbers; the same
// string feeds both CSV and JSON so the two formats encode identical values.
std::string format_number(double v);

std::string verify_report_csv(const VerifyReport& report);
std::string verify_report_json(const VerifyReport& report);
std::string sweep_result_csv(const SweepResult& sweep);
std::string sweep_result_json(const SweepResult& sweep);
std::string optimize_rows_csv(const std::vector<OptimizeRow>& rows);
std::string optimize_rows_json(const std::vector<OptimizeRow>& rows);

} // namespace ehrelay
