#pragma once

#include "ehrelay/errors.hpp"

namespace ehrelay {

// Sourced transmit powers are noise-normalized linear SNRs: every receiver
// noise is CN(0,1) and the block duration is normalized to 1.
struct SystemConfig {
    double p1 = 1.0;     // source power for the first destination's message
    double p2 = 1.0;     // source power for the second destination's message
    double eta = 1.0;    // energy conversion efficiency, in (0, 1]
    double m = 4.0;      // path-loss exponent
    double rt = 1.0;     // target rate, bit/sec/Hz
    double theta1 = 0.5; // relay combining weight for the first message

    double theta2() const { return 1.0 - theta1; }
    void validate() const;
};

// Node distances in normalized units. d_r1 == d_r2 when built by
// place_relay_on_height.
struct Topology {
    double d_s1 = 1.0;
    double d_s2 = 1.0;
    double d_12 = 1.0;
    double d_sr = 0.5;
    double d_r1 = 0.0;
    double d_r2 = 0.0;

    void validate() const;
};

// Mean-square channel coefficients, omega = d^(-m).
struct ChannelGains {
    double omega_sr = 1.0;
    double omega_s1 = 1.0;
    double omega_s2 = 1.0;
    double omega_r1 = 1.0;
    double omega_r2 = 1.0;
};

// Places the relay on the altitude from the source to the midpoint of the
// destination segment, at distance d_sr from the source. Requires the
// isoceles layout d_s1 == d_s2 and a non-degenerate triangle.
Topology place_relay_on_height(double d_sr, double d_s1, double d_s2, double d_12);

ChannelGains mean_channel_gains(const Topology& topology, double m);

} // namespace ehrelay
