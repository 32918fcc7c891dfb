#include "ehrelay/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ehrelay {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "p1", "p2", "ps_db", "eta", "m", "rt", "theta1",
    "d_sr", "d_s1", "d_s2", "d_12", "d_r1", "d_r2",
    "protocol", "n_samples", "seed", "n_streams",
    "max_terms", "term_rel_tol", "abs_tol", "rel_tol", "max_subdivisions",
    "param_grid", "output_path", "output_format"};

double number_at(const json& j, const std::string& key) {
    if (!j.at(key).is_number()) {
        throw std::invalid_argument("config field '" + key + "': number expected");
    }
    return j.at(key).get<double>();
}

} // namespace

std::vector<double> parse_grid_spec(const std::string& spec) {
    double start = 0.0, stop = 0.0, step = 0.0;
    char sep1 = 0, sep2 = 0;
    std::istringstream in(spec);
    if (!(in >> start >> sep1 >> stop >> sep2 >> step) || sep1 != ':' || sep2 != ':') {
        throw std::invalid_argument("grid spec '" + spec + "': expected start:stop:step");
    }
    if (!(step > 0.0) || stop < start) {
        throw std::invalid_argument("grid spec '" + spec + "': step > 0 and stop >= start required");
    }
    const int count = static_cast<int>(std::floor((stop - start) / step + 1.5));
    std::vector<double> grid;
    grid.reserve(count);
    for (int i = 0; i < count; ++i) grid.push_back(start + i * step);
    return grid;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a flat JSON object");

    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!kKnownKeys.count(key)) {
            throw std::invalid_argument("config field '" + key + "' is not recognized");
        }
    }

    RunConfig cfg;
    if (j.contains("ps_db")) {
        const double ps = std::pow(10.0, number_at(j, "ps_db") / 10.0);
        cfg.system.p1 = cfg.system.p2 = ps;
    }
    if (j.contains("p1")) cfg.system.p1 = number_at(j, "p1");
    if (j.contains("p2")) cfg.system.p2 = number_at(j, "p2");
    if (j.contains("eta")) cfg.system.eta = number_at(j, "eta");
    if (j.contains("m")) cfg.system.m = number_at(j, "m");
    if (j.contains("rt")) cfg.system.rt = number_at(j, "rt");
    if (j.contains("theta1")) cfg.system.theta1 = number_at(j, "theta1");

    if (j.contains("d_sr")) cfg.d_sr = number_at(j, "d_sr");
    if (j.contains("d_s1")) cfg.d_s1 = number_at(j, "d_s1");
    if (j.contains("d_s2")) cfg.d_s2 = number_at(j, "d_s2");
    if (j.contains("d_12")) cfg.d_12 = number_at(j, "d_12");
    if (j.contains("d_r1")) cfg.d_r1 = number_at(j, "d_r1");
    if (j.contains("d_r2")) cfg.d_r2 = number_at(j, "d_r2");

    if (j.contains("protocol")) {
        const std::string p = j.at("protocol").get<std::string>();
        if (p == "ts") cfg.protocol = ProtocolChoice::ts;
        else if (p == "ps") cfg.protocol = ProtocolChoice::ps;
        else if (p == "both") cfg.protocol = ProtocolChoice::both;
        else throw std::invalid_argument("config field 'protocol': expected ts | ps | both");
    }

    if (j.contains("n_samples")) cfg.mc.n_samples = j.at("n_samples").get<std::uint64_t>();
    if (j.contains("seed")) cfg.mc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("n_streams")) cfg.mc.n_streams = j.at("n_streams").get<int>();

    if (j.contains("max_terms")) cfg.series.max_terms = j.at("max_terms").get<int>();
    if (j.contains("term_rel_tol")) cfg.series.term_rel_tol = number_at(j, "term_rel_tol");

    if (j.contains("abs_tol")) cfg.quadrature.abs_tol = number_at(j, "abs_tol");
    if (j.contains("rel_tol")) cfg.quadrature.rel_tol = number_at(j, "rel_tol");
    if (j.contains("max_subdivisions")) cfg.quadrature.max_subdivisions = j.at("max_subdivisions").get<int>();

    if (j.contains("param_grid")) cfg.param_grid = parse_grid_spec(j.at("param_grid").get<std::string>());
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    if (j.contains("output_format")) {
        const std::string f = j.at("output_format").get<std::string>();
        if (f == "csv") cfg.format = OutputFormat::csv;
        else if (f == "json") cfg.format = OutputFormat::json;
        else throw std::invalid_argument("config field 'output_format': expected csv | json");
    }
    return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file '" + path + "' cannot be opened");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

Topology RunConfig::topology() const {
    if (d_r1.has_value() != d_r2.has_value()) {
        throw std::invalid_argument("config: d_r1 and d_r2 must be given together");
    }
    if (d_r1.has_value()) {
        Topology t{d_s1, d_s2, d_12, d_sr, *d_r1, *d_r2};
        t.validate();
        return t;
    }
    return place_relay_on_height(d_sr, d_s1, d_s2, d_12);
}

ChannelGains RunConfig::gains() const { return mean_channel_gains(topology(), system.m); }

void RunConfig::validate() const {
    system.validate();
    mc.validate();
    series.validate();
    quadrature.validate();
    topology().validate();
    for (double v : param_grid) {
        if (!(v >= 0.0 && v < 1.0)) {
            throw std::invalid_argument("config: param_grid values must lie in [0, 1)");
        }
    }
}

} // namespace ehrelay
