#include <clocale>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ehrelay/commands.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::string protocol;
    std::string grid;
    std::string out_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
};

void add_common_flags(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--protocol", o.protocol, "ts | ps | both")
        ->check(CLI::IsMember({"ts", "ps", "both"}));
    cmd->add_option("--grid", o.grid, "parameter grid start:stop:step");
    cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    cmd->add_option("--samples", o.samples, "Monte Carlo sample count");
    cmd->add_option("--out", o.out_path, "output file (default stdout)");
    cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

ehrelay::RunConfig build_config(const CliOverrides& o, bool grid_is_params) {
    ehrelay::RunConfig cfg;
    if (!o.config_path.empty()) cfg = ehrelay::RunConfig::from_json_file(o.config_path);
    if (!o.protocol.empty()) {
        cfg.protocol = o.protocol == "ts"   ? ehrelay::ProtocolChoice::ts
                       : o.protocol == "ps" ? ehrelay::ProtocolChoice::ps
                                            : ehrelay::ProtocolChoice::both;
    }
    if (grid_is_params && !o.grid.empty()) cfg.param_grid = ehrelay::parse_grid_spec(o.grid);
    if (o.seed) cfg.mc.seed = *o.seed;
    if (o.samples) cfg.mc.n_samples = *o.samples;
    if (!o.out_path.empty()) cfg.output_path = o.out_path;
    if (!o.format.empty()) {
        cfg.format = o.format == "json" ? ehrelay::OutputFormat::json : ehrelay::OutputFormat::csv;
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C"); // '.' decimal point in every locale

    CLI::App app{"Outage workbench for the energy-harvesting relay network"};
    app.require_subcommand(1);

    CliOverrides overrides;
    std::string axis = "power";
    std::string method = "grid";

    CLI::App* verify = app.add_subcommand(
        "verify", "Cross-check closed form, quadrature and Monte Carlo on a parameter grid");
    add_common_flags(verify, overrides);

    CLI::App* sweep =
        app.add_subcommand("sweep", "Optimal outage against source power or relay distance");
    add_common_flags(sweep, overrides);
    sweep->add_option("--axis", axis, "power | distance")
        ->check(CLI::IsMember({"power", "distance"}));

    CLI::App* optimize =
        app.add_subcommand("optimize", "Optimize rho / alpha for the configured operating point");
    add_common_flags(optimize, overrides);
    optimize->add_option("--method", method, "grid | golden")
        ->check(CLI::IsMember({"grid", "golden"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            return ehrelay::cmd_verify(build_config(overrides, true));
        }
        if (sweep->parsed()) {
            const auto cfg = build_config(overrides, false);
            const auto sweep_axis =
                axis == "power" ? ehrelay::SweepAxis::power : ehrelay::SweepAxis::distance;
            std::vector<double> grid;
            if (!overrides.grid.empty()) {
                grid = ehrelay::parse_grid_spec(overrides.grid);
            } else if (sweep_axis == ehrelay::SweepAxis::power) {
                grid = ehrelay::parse_grid_spec("0:30:5");
            } else {
                grid = ehrelay::parse_grid_spec("0.3:0.8:0.1");
            }
            return ehrelay::cmd_sweep(cfg, sweep_axis, grid);
        }
        const auto cfg = build_config(overrides, false);
        return ehrelay::cmd_optimize(
            cfg, method == "golden" ? ehrelay::OptMethod::golden : ehrelay::OptMethod::grid);
    } catch (const ehrelay::ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << " (best estimate " << e.best_estimate
                  << ", bound " << e.error_bound << ")\n";
        return ehrelay::kExitAgreement;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return ehrelay::kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return ehrelay::kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ehrelay::kExitIo;
    }
}
