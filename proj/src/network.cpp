#include "ehrelay/network.hpp"

#include <cmath>
#include <string>

namespace ehrelay {

void SystemConfig::validate() const {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("SystemConfig: 0 < eta <= 1 required");
    if (!(theta1 > 0.0 && theta1 < 1.0)) throw std::invalid_argument("SystemConfig: 0 < theta1 < 1 required");
    if (!(m >= 2.0)) throw std::invalid_argument("SystemConfig: m >= 2 required");
    if (!(rt > 0.0)) throw std::invalid_argument("SystemConfig: rt > 0 required");
    if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw std::invalid_argument("SystemConfig: powers must be >= 0");
    if (p1 == 0.0 && p2 == 0.0) throw std::invalid_argument("SystemConfig: p1 and p2 must not both be zero");
}

void Topology::validate() const {
    const double d[6] = {d_s1, d_s2, d_12, d_sr, d_r1, d_r2};
    for (double v : d) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw GeometryError("Topology: all distances must be positive and finite");
        }
    }
}

Topology place_relay_on_height(double d_sr, double d_s1, double d_s2, double d_12) {
    if (!(d_s1 > 0.0 && d_s2 > 0.0 && d_12 > 0.0 && d_sr > 0.0)) {
        throw GeometryError("place_relay_on_height: distances must be positive");
    }
    if (d_s1 != d_s2) {
        throw GeometryError("place_relay_on_height: only the isoceles layout d_s1 == d_s2 is supported");
    }
    if (d_12 >= 2.0 * d_s1) {
        throw GeometryError("place_relay_on_height: degenerate triangle, d_12 >= 2 * d_s1");
    }
    const double half_base = 0.5 * d_12;
    const double height = std::sqrt(d_s1 * d_s1 - half_base * half_base);
    if (!(d_sr < d_s1 + height)) {
        throw GeometryError("place_relay_on_height: d_sr beyond the supported altitude segment");
    }
    Topology t;
    t.d_s1 = d_s1;
    t.d_s2 = d_s2;
    t.d_12 = d_12;
    t.d_sr = d_sr;
    t.d_r1 = std::sqrt((height - d_sr) * (height - d_sr) + half_base * half_base);
    t.d_r2 = t.d_r1;
    t.validate();
    return t;
}

ChannelGains mean_channel_gains(const Topology& topology, double m) {
    topology.validate();
    if (!(m >= 2.0)) throw std::invalid_argument("mean_channel_gains: m >= 2 required");
    ChannelGains g;
    g.omega_sr = std::pow(topology.d_sr, -m);
    g.omega_s1 = std::pow(topology.d_s1, -m);
    g.omega_s2 = std::pow(topology.d_s2, -m);
    g.omega_r1 = std::pow(topology.d_r1, -m);
    g.omega_r2 = std::pow(topology.d_r2, -m);
    return g;
}

} // namespace ehrelay
