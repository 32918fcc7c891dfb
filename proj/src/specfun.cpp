#include "ehrelay/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace ehrelay {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;

    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double center = 0.5 * (a + b);

    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double f1[7];
    double f2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        resk += kWgk[j] * (f1[j] + f2[j]);
    }
    for (int j = 0; j < 3; ++j) {
        resg += kWg[j] * (f1[2 * j + 1] + f2[2 * j + 1]);
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::fabs(f1[j] - reskh) + std::fabs(f2[j] - reskh));
    }
    resasc *= std::fabs(h);

    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    return Panel{a, b, resk * h, err};
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0)) throw std::domain_error("QuadratureSpec: abs_tol > 0 required");
    if (!(rel_tol > 0.0)) throw std::domain_error("QuadratureSpec: rel_tol > 0 required");
    if (max_subdivisions < 1) throw std::domain_error("QuadratureSpec: max_subdivisions >= 1 required");
}

double quad_log_endpoint(const std::function<double(double)>& f, double lo, double hi,
                         const QuadratureSpec& spec) {
    spec.validate();
    if (!(lo < hi)) throw std::domain_error("quad_log_endpoint: lo < hi required");

    std::priority_queue<Panel> queue;
    Panel first = evaluate_panel(f, lo, hi);
    double total = first.value;
    double total_err = first.error;
    queue.push(first);

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (queue.empty() || splits >= spec.max_subdivisions) {
            throw ConvergenceError("quad_log_endpoint: subdivision budget exhausted", total, total_err);
        }
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Interval is at machine resolution; its error estimate cannot be
            // reduced further, so count it as settled.
            total_err -= worst.error;
            continue;
        }
        const Panel left = evaluate_panel(f, worst.a, mid);
        const Panel right = evaluate_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++splits;
    }
    return total;
}

namespace {

// Ascending series: K1(x) = 1/x + sum_l t_l (ln(x/2) + C - (H_l + H_{l+1})/2)
// with t_l = (x/2)^{2l+1} / (l! (l+1)!).
double bessel_k1_series(double x) {
    const double half = 0.5 * x;
    const double log_half = std::log(half);
    double t = half;
    double harmonic_l = 0.0;
    double harmonic_l1 = 1.0;
    double sum = 0.0;
    const double pole = 1.0 / x;
    for (int l = 0; l < 64; ++l) {
        sum += t * (log_half + kEulerGamma - 0.5 * (harmonic_l + harmonic_l1));
        if (t * (std::fabs(log_half) + 2.0) < 1e-16 * (std::fabs(sum) + pole)) break;
        t *= half * half / ((l + 1.0) * (l + 2.0));
        harmonic_l = harmonic_l1;
        harmonic_l1 += 1.0 / (l + 2.0);
    }
    return pole + sum;
}

// Integral representation K1(x) = integral of e^{-x cosh t} cosh t, t in [0, inf),
// truncated where the integrand underflows.
double bessel_k1_integral(double x) {
    const double t_max = std::acosh(746.0 / x);
    const QuadratureSpec tight{1e-300, 5e-13, 400};
    return quad_log_endpoint(
        [x](double t) {
            const double ch = std::cosh(t);
            return std::exp(-x * ch) * ch;
        },
        0.0, t_max, tight);
}

// Large-argument expansion K1(x) ~ sqrt(pi/(2x)) e^{-x} (1 + 3/(8x) - ...).
double bessel_k1_asymptotic(double x) {
    double term = 1.0;
    double sum = 1.0;
    double prev = std::fabs(term);
    for (int k = 1; k <= 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (4.0 - odd * odd) / (k * 8.0 * x);
        if (std::fabs(term) >= prev) break; // divergent tail reached
        sum += term;
        prev = std::fabs(term);
        if (std::fabs(term) < 1e-17 * sum) break;
    }
    return std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * sum;
}

} // namespace

double bessel_k1(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1: x > 0 required");
    if (x <= 2.0) return bessel_k1_series(x);
    if (x < 16.0) return bessel_k1_integral(x);
    if (x > 745.0) return 0.0; // e^{-x} underflows; true value < 1e-324
    return bessel_k1_asymptotic(x);
}

double lower_incomplete_gamma_scaled(int s, double x, double log_scale) {
    if (s < 1) throw std::domain_error("lower_incomplete_gamma: s >= 1 required");
    if (x == 0.0) return 0.0;

    if (x > 0.0 && x < s + 1.0) {
        // Power series gamma(s,x) = x^s e^{-x} sum_j x^j / (s (s+1) ... (s+j)),
        // all terms positive; the finite-sum identity cancels badly here.
        long double term = 1.0L / s;
        long double sum = term;
        for (int j = 1; j < 500; ++j) {
            term *= static_cast<long double>(x) / (s + j);
            sum += term;
            if (term < 1e-19L * sum) break;
        }
        const long double exponent = static_cast<long double>(s) * std::log(static_cast<long double>(x)) -
                                     x + static_cast<long double>(log_scale);
        return static_cast<double>(std::exp(exponent) * sum);
    }

    // Finite-sum identity, valid for any real x (including negative).
    long double partial = 1.0L;
    long double term = 1.0L;
    for (int k = 1; k < s; ++k) {
        term *= static_cast<long double>(x) / k;
        partial += term;
    }
    long double factorial = 1.0L;
    for (int k = 2; k < s; ++k) factorial *= k;
    const long double scaled_one = std::exp(static_cast<long double>(log_scale));
    const long double scaled_exp = std::exp(static_cast<long double>(log_scale) - static_cast<long double>(x));
    return static_cast<double>(factorial * (scaled_one - scaled_exp * partial));
}

double lower_incomplete_gamma(int s, double x) {
    return lower_incomplete_gamma_scaled(s, x, 0.0);
}

double h_l_integral(int l, double decay_rate, double r0, const QuadratureSpec& spec,
                    double log_scale) {
    if (l < 0) throw std::domain_error("h_l_integral: l >= 0 required");
    if (!(r0 > 0.0)) throw std::domain_error("h_l_integral: r0 > 0 required");
    const double power = l + 1.0;
    return quad_log_endpoint(
        [decay_rate, power, log_scale](double t) {
            return std::exp(-decay_rate * t + log_scale) * std::pow(t, power) * std::log(t);
        },
        0.0, r0, spec);
}

} // namespace ehrelay
