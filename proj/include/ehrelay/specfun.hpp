#pragma once

#include <functional>

#include "ehrelay/errors.hpp"

namespace ehrelay {

// Euler-Mascheroni constant at full double precision.
inline constexpr double kEulerGamma = 0.577215664901532860;

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;

    void validate() const;
};

// Modified Bessel function of the second kind, order one.
// Ascending series for x <= 2, integral representation for mid-range x,
// asymptotic expansion for large x. Relative accuracy ~1e-12 on [1e-8, 50].
double bessel_k1(double x);

// Lower incomplete gamma for integer order s >= 1 and real x of either sign,
// gamma(s, x) = integral of t^{s-1} e^{-t} over [0, x]. Real-valued for
// negative x through the finite-sum identity
//   gamma(s, x) = (s-1)! (1 - e^{-x} sum_{k<s} x^k / k!).
double lower_incomplete_gamma(int s, double x);

// e^{log_scale} * gamma(s, x) with the scale folded into the exponentials,
// so it stays finite where the unscaled product would overflow or lose the
// result to cancellation.
double lower_incomplete_gamma_scaled(int s, double x, double log_scale);

// Globally adaptive Gauss-Kronrod integration of f over [lo, hi]. Nodes are
// interior, so f is never evaluated at the endpoints; an integrable
// logarithmic singularity at lo is handled by subdivision. Error target is
// max(abs_tol, rel_tol * |result|); throws ConvergenceError when the
// subdivision budget runs out first.
double quad_log_endpoint(const std::function<double(double)>& f, double lo, double hi,
                         const QuadratureSpec& spec = {});

// integral of exp(-decay_rate * t + log_scale) * t^{l+1} * ln(t) over [0, r0].
// decay_rate may be any real, including 0. log_scale (default 0) shifts the
// exponent so strongly growing integrands can be evaluated pre-scaled.
double h_l_integral(int l, double decay_rate, double r0,
                    const QuadratureSpec& spec = {}, double log_scale = 0.0);

} // namespace ehrelay
