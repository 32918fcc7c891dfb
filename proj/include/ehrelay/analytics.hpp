#pragma once

#include "ehrelay/outage_estimate.hpp"
#include "ehrelay/protocols.hpp"
#include "ehrelay/specfun.hpp"

namespace ehrelay {

struct SeriesPolicy {
    int max_terms = 60;
    double term_rel_tol = 1e-12;

    void validate() const;
};

// Optional diagnostics from the closed-form series assembly.
struct SeriesDiagnostics {
    int terms_used = 0;
    double last_term = 0.0;
    double tail_bound = 0.0;
};

// CDF of the relayed-branch SNR Z = a*X*Y/(b*X + c) with X, Y exponential:
//   F_Z(z) = 1 - exp(-z*b/(a*omega_sr)) * u*K1(u),
//   u = 2*sqrt(z*c/(a*omega_sr*omega_r1)).
// Requires a > 0; the degenerate a = 0 case (Z identically 0) is the
// caller's reduction.
double cdf_z(double z, const OutageCoefficients& coeffs, double omega_sr, double omega_r1);

// Outage by direct quadrature of
//   integral over [0, r0] of F_Z(r0 - t) * (1/(p1*omega_s1)) e^{-t/(p1*omega_s1)} dt.
// This is the ground-truth path the closed form is checked against.
// Handles a = 0 as the no-relay reduction 1 - exp(-r0/(p1*omega_s1)).
OutageEstimate outage_quadrature(const OutageCoefficients& coeffs, double omega_sr,
                                 double omega_r1, double omega_s1, double p1,
                                 const QuadratureSpec& spec = {});

// Closed-form outage: endpoint terms plus the Bessel-series expansion, with
// the incomplete-gamma pieces from lower_incomplete_gamma and the
// logarithmic inner integrals from h_l_integral. Throws ConvergenceError
// (carrying the partial sum) when the series does not settle within
// policy.max_terms.
OutageEstimate outage_closed_form(const OutageCoefficients& coeffs, double omega_sr,
                                  double omega_r1, double omega_s1, double p1,
                                  const SeriesPolicy& policy = {},
                                  const QuadratureSpec& spec = {},
                                  SeriesDiagnostics* diagnostics = nullptr);

// Two-slot TDMA baseline without the relay: I = (1/2) log2(1 + P1 |h|^2),
// outage = 1 - exp(-(2^{2 rt} - 1)/(p1*omega_s1)).
OutageEstimate outage_noncooperative(double p1, double omega_s1, double rt);

} // namespace ehrelay
