#pragma once

#include "ehrelay/network.hpp"

namespace ehrelay {

// Time-switching protocol: fraction rho of the block harvests energy, the
// remainder carries the three transmission phases. rho = 1 would leave no
// transmission time, so the domain is half-open.
struct TsParams {
    double rho = 0.5;

    void validate() const;
};

// Power-splitting protocol: fraction alpha_i of the received power of message
// i is diverted to harvesting. alpha_i = 1 would leave no information power.
struct PsParams {
    double alpha1 = 0.5;
    double alpha2 = 0.5;

    void validate() const;
};

// Reduced constants of the relayed-branch SNR Z = a*X*Y / (b*X + c) plus the
// rate threshold r0 and the mutual-information prefactor. Both protocols
// reduce to this one form; only the coefficient builders differ.
struct OutageCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double r0 = 1.0;
    double rate_prefactor = 2.0 / 3.0;

    void validate() const;
};

enum class Protocol { ts, ps };

OutageCoefficients ts_coefficients(const SystemConfig& cfg, const TsParams& params);
OutageCoefficients ps_coefficients(const SystemConfig& cfg, const PsParams& params);

// Relayed-branch SNR for one channel realization: a*x_sr*x_r1 / (b*x_r1 + c).
double instantaneous_relay_snr(const OutageCoefficients& coeffs, double x_sr, double x_r1);

// Combined-rate mutual information, rate_prefactor * log2(1 + g0 + g1).
double mutual_information(const OutageCoefficients& coeffs, double gamma0, double gamma1);

// Relay transmit power for one |h_sr|^2 draw. Diagnostic only; the outage
// paths consume it folded into coefficient a.
double relay_transmit_power(const SystemConfig& cfg, const TsParams& params, double x_sr);
double relay_transmit_power(const SystemConfig& cfg, const PsParams& params, double x_sr);

// Relay combining weight for one message. The exact form normalizes by
// P*x_sr + 1; the approximate form drops the +1 and is the one baked into
// the coefficient builders above, so this lets tests measure that gap.
double combining_weight(double theta_i, double p_i, double x_sr, bool exact);

} // namespace ehrelay
