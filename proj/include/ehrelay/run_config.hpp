#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ehrelay/analytics.hpp"
#include "ehrelay/montecarlo.hpp"
#include "ehrelay/network.hpp"

namespace ehrelay {

enum class ProtocolChoice { ts, ps, both };
enum class OutputFormat { csv, json };

// Flat experiment description: a JSON object with the keys below, every one
// optional and defaulting to the standard setup (rt = 1, eta = 1, m = 4,
// unit triangle, theta1 = 0.5, p1 = p2 = 1). Either give d_sr (relay placed
// on the triangle altitude) or a full set of raw distances including
// d_r1/d_r2.
//
//   p1, p2, ps_db, eta, m, rt, theta1,
//   d_sr, d_s1, d_s2, d_12, d_r1, d_r2,
//   protocol ("ts" | "ps" | "both"),
//   n_samples, seed, n_streams,
//   max_terms, term_rel_tol,
//   abs_tol, rel_tol, max_subdivisions,
//   param_grid ("start:stop:step"),
//   output_path, output_format ("csv" | "json")
struct RunConfig {
    SystemConfig system{};
    double d_sr = 0.5;
    double d_s1 = 1.0;
    double d_s2 = 1.0;
    double d_12 = 1.0;
    std::optional<double> d_r1;
    std::optional<double> d_r2;
    ProtocolChoice protocol = ProtocolChoice::both;
    McRunSpec mc{};
    SeriesPolicy series{};
    QuadratureSpec quadrature{};
    std::vector<double> param_grid; // verify grid; empty = 0.1 .. 0.9 step 0.1
    std::string output_path;        // empty = stdout
    OutputFormat format = OutputFormat::csv;

    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_json_file(const std::string& path);

    Topology topology() const;
    ChannelGains gains() const;
    void validate() const;
};

// "start:stop:step" with an inclusive stop.
std::vector<double> parse_grid_spec(const std::string& spec);

} // namespace ehrelay
