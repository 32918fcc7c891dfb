#include "ehrelay/analytics.hpp"

#include <algorithm>
#include <cmath>

namespace ehrelay {

namespace {

// Beyond this the outage is 1 to double precision and the series machinery
// would only under/overflow.
constexpr double kSaturationExponent = 1500.0;

void check_link_inputs(double omega_sr, double omega_r1, double omega_s1, double p1) {
    if (!(omega_sr > 0.0 && omega_r1 > 0.0 && omega_s1 > 0.0)) {
        throw std::domain_error("outage: channel gains must be positive");
    }
    if (!(p1 > 0.0)) throw std::domain_error("outage: p1 > 0 required");
}

double no_relay_outage(double rate_a, double r0) {
    if (!std::isfinite(r0) || rate_a * r0 > kSaturationExponent) return 1.0;
    return -std::expm1(-rate_a * r0);
}

// e^{-A r0} * integral over [0, r0] of u^{n-1} e^{delta u} du, kept in long
// double so that widely scaled factors cancel instead of over/underflowing.
long double scaled_exp_moment(int n, double delta, double r0, double rate_a) {
    const double x = delta * r0;
    if (std::fabs(x) <= 0.5) {
        // Taylor expansion around delta = 0; the degenerate-decay limit
        // integral of u^{n-1} du = r0^n / n is the j = 0 term.
        long double term = 1.0L / n;
        long double sum = term;
        long double xj = 1.0L;
        for (int j = 1; j < 64; ++j) {
            xj *= static_cast<long double>(x) / j;
            const long double t = xj / (n + j);
            sum += t;
            if (std::fabs(static_cast<double>(t)) < 1e-19 * std::fabs(static_cast<double>(sum))) break;
        }
        return std::exp(static_cast<long double>(-rate_a) * r0 +
                        static_cast<long double>(n) * std::log(static_cast<long double>(r0))) *
               sum;
    }
    // gamma identity with |delta|^n folded into the scale so neither factor
    // leaves the representable range on its own.
    const double log_scale = -rate_a * r0 - n * std::log(std::fabs(delta));
    const double g = lower_incomplete_gamma_scaled(n, -x, log_scale);
    const bool negate = (delta > 0.0) && (n % 2 != 0); // sign of (-delta)^n
    return negate ? -static_cast<long double>(g) : static_cast<long double>(g);
}

} // namespace

void SeriesPolicy::validate() const {
    if (max_terms < 1) throw std::domain_error("SeriesPolicy: max_terms >= 1 required");
    if (!(term_rel_tol > 0.0)) throw std::domain_error("SeriesPolicy: term_rel_tol > 0 required");
}

double cdf_z(double z, const OutageCoefficients& coeffs, double omega_sr, double omega_r1) {
    if (!(coeffs.a > 0.0)) throw std::domain_error("cdf_z: a > 0 required");
    if (!(omega_sr > 0.0 && omega_r1 > 0.0)) throw std::domain_error("cdf_z: gains must be positive");
    if (z <= 0.0) return 0.0;
    const double decay = coeffs.b / (coeffs.a * omega_sr);
    const double u = 2.0 * std::sqrt(z * coeffs.c / (coeffs.a * omega_sr * omega_r1));
    // u*K1(u) decays from 1 at u=0; beyond ~700 it underflows to 0.
    const double bessel_part = (u < 700.0) ? u * bessel_k1(u) : 0.0;
    const double value = 1.0 - std::exp(-decay * z) * bessel_part;
    return std::clamp(value, 0.0, 1.0);
}

OutageEstimate outage_quadrature(const OutageCoefficients& coeffs, double omega_sr,
                                 double omega_r1, double omega_s1, double p1,
                                 const QuadratureSpec& spec) {
    coeffs.validate();
    check_link_inputs(omega_sr, omega_r1, omega_s1, p1);
    const double rate_a = 1.0 / (p1 * omega_s1);
    const double r0 = coeffs.r0;

    if (coeffs.a == 0.0) {
        return {no_relay_outage(rate_a, r0), 0.0, 0, OutageMethod::quadrature};
    }
    const double rate_b = coeffs.b / (coeffs.a * omega_sr);
    if (!std::isfinite(r0) || std::min(rate_a, rate_b) * r0 > kSaturationExponent) {
        return {1.0, 0.0, 0, OutageMethod::quadrature};
    }

    // The integrand decays like e^{-rate_a t}; past 45/rate_a it contributes
    // less than e^{-45} and would only starve the adaptive rule of nodes on
    // the support.
    const double t_hi = std::min(r0, 45.0 / rate_a);
    const double value = quad_log_endpoint(
        [&](double t) {
            return cdf_z(r0 - t, coeffs, omega_sr, omega_r1) * rate_a * std::exp(-rate_a * t);
        },
        0.0, t_hi, spec);
    return {std::clamp(value, 0.0, 1.0), 0.0, 0, OutageMethod::quadrature};
}

OutageEstimate outage_closed_form(const OutageCoefficients& coeffs, double omega_sr,
                                  double omega_r1, double omega_s1, double p1,
                                  const SeriesPolicy& policy, const QuadratureSpec& spec,
                                  SeriesDiagnostics* diagnostics) {
    coeffs.validate();
    policy.validate();
    check_link_inputs(omega_sr, omega_r1, omega_s1, p1);
    const double rate_a = 1.0 / (p1 * omega_s1);
    const double r0 = coeffs.r0;

    if (coeffs.a == 0.0) {
        return {no_relay_outage(rate_a, r0), 0.0, 0, OutageMethod::closed_form};
    }
    const double rate_b = coeffs.b / (coeffs.a * omega_sr);
    if (!std::isfinite(r0) || std::min(rate_a, rate_b) * r0 > kSaturationExponent) {
        return {1.0, 0.0, 0, OutageMethod::closed_form};
    }

    const double series_base = coeffs.c / (coeffs.a * omega_sr * omega_r1);
    const double delta = rate_a - rate_b;

    // Direct-link term plus the pure-exponential part of the relayed CDF.
    long double total = -std::expm1(-rate_a * r0);
    if (std::fabs(delta * r0) <= 0.3) {
        const double em = (delta == 0.0) ? 1.0 : -std::expm1(-delta * r0) / (delta * r0);
        total += -rate_a * std::exp(-rate_b * r0) * r0 * em;
    } else {
        total += -(rate_a / delta) * (std::exp(-rate_b * r0) - std::exp(-rate_a * r0));
    }

    // Bessel-series part. Term l carries
    //   W^{l+1}/(l!(l+1)!) * [ (ln W + 2C - H_l - H_{l+1}) * G_{l+2} + J_l ]
    // with G the scaled exponential moment and J_l the logarithmic inner
    // integral, both pre-multiplied by e^{-A r0}.
    const double log_base = std::log(series_base);
    long double base_pow = series_base;   // W^{l+1}
    long double inv_fact = 1.0L;          // 1/(l! (l+1)!)
    double harmonic_l = 0.0;
    double harmonic_l1 = 1.0;

    bool converged = false;
    int terms = 0;
    long double term = 0.0L;
    double tail_bound = 0.0;
    for (int l = 0; l < policy.max_terms; ++l) {
        const double k_l = log_base + 2.0 * kEulerGamma - harmonic_l - harmonic_l1;
        const long double moment = scaled_exp_moment(l + 2, delta, r0, rate_a);
        const double log_integral = h_l_integral(l, -delta, r0, spec, -rate_a * r0);
        term = -static_cast<long double>(rate_a) * base_pow * inv_fact *
               (static_cast<long double>(k_l) * moment + static_cast<long double>(log_integral));
        total += term;
        ++terms;

        const double term_mag = std::fabs(static_cast<double>(term));
        // Successive terms contract by W * r0 / ((l+1)(l+2)) up to the slowly
        // varying bracket; the factor 4 absorbs the bracket growth.
        const double ratio_bound = 4.0 * series_base * r0 / ((l + 1.0) * (l + 2.0));
        if (ratio_bound < 0.5 && term_mag <= policy.term_rel_tol * std::fabs(static_cast<double>(total))) {
            tail_bound = term_mag * ratio_bound / (1.0 - ratio_bound);
            converged = true;
            break;
        }

        base_pow *= series_base;
        inv_fact /= (l + 1.0) * (l + 2.0);
        harmonic_l = harmonic_l1;
        harmonic_l1 += 1.0 / (l + 2.0);
    }

    if (diagnostics) {
        diagnostics->terms_used = terms;
        diagnostics->last_term = static_cast<double>(term);
        diagnostics->tail_bound = tail_bound;
    }
    if (!converged) {
        throw ConvergenceError("outage_closed_form: series not converged within max_terms",
                               std::clamp(static_cast<double>(total), 0.0, 1.0),
                               std::fabs(static_cast<double>(term)));
    }
    return {std::clamp(static_cast<double>(total), 0.0, 1.0), 0.0, 0, OutageMethod::closed_form};
}

OutageEstimate outage_noncooperative(double p1, double omega_s1, double rt) {
    if (!(p1 * omega_s1 > 0.0)) throw std::domain_error("outage_noncooperative: p1 * omega_s1 > 0 required");
    if (!(rt >= 0.0)) throw std::domain_error("outage_noncooperative: rt >= 0 required");
    const double threshold = std::exp2(2.0 * rt) - 1.0;
    return {no_relay_outage(1.0 / (p1 * omega_s1), threshold), 0.0, 0, OutageMethod::closed_form};
}

} // namespace ehrelay
