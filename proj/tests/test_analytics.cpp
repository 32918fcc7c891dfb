#include "doctest.h"

#include <cmath>
#include <random>

#include "ehrelay/analytics.hpp"
#include "oracles.hpp"

using namespace ehrelay;

namespace {

constexpr double kOmegaSr = 16.0;
constexpr double kOmegaR1 = 6.787;

OutageCoefficients ts_point() { return {1.5, 3.0, 1.0, 7.0, 1.0 / 3.0}; }
OutageCoefficients ps_point() { return {0.5, 2.0, 1.0, std::exp2(1.5) - 1.0, 2.0 / 3.0}; }

double closed_vs_quad_gap(const OutageCoefficients& k, double omega_sr, double omega_r1,
                          double omega_s1, double p1) {
    const double quad = outage_quadrature(k, omega_sr, omega_r1, omega_s1, p1).p;
    const double closed = outage_closed_form(k, omega_sr, omega_r1, omega_s1, p1).p;
    return std::fabs(closed - quad) / quad;
}

} // namespace

TEST_CASE("cdf_z endpoints") {
    const auto k = ts_point();
    CHECK(cdf_z(0.0, k, kOmegaSr, kOmegaR1) == 0.0);
    CHECK(cdf_z(1e9, k, kOmegaSr, kOmegaR1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(cdf_z(1.0, OutageCoefficients{0.0, 0.0, 1.0, 1.0, 0.5}, 1.0, 1.0),
                    std::domain_error);
}

TEST_CASE("cdf_z against the brute-force double integral") {
    const auto k = ts_point();
    for (double z : {0.5, 2.0, 7.0}) {
        CAPTURE(z);
        const double reference =
            oracle::cdf_z_double_integral(z, k.a, k.b, k.c, kOmegaSr, kOmegaR1);
        CHECK(std::fabs(cdf_z(z, k, kOmegaSr, kOmegaR1) - reference) < 1e-6);
    }
    const auto kp = ps_point();
    const double reference =
        oracle::cdf_z_double_integral(1.0, kp.a, kp.b, kp.c, kOmegaSr, kOmegaR1);
    CHECK(std::fabs(cdf_z(1.0, kp, kOmegaSr, kOmegaR1) - reference) < 1e-6);
}

TEST_CASE("cdf_z is a CDF: monotone and bounded") {
    const auto k = ps_point();
    double prev = 0.0;
    for (double z = 0.0; z <= 20.0; z += 0.25) {
        const double v = cdf_z(z, k, kOmegaSr, kOmegaR1);
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("outage_quadrature reductions") {
    // No harvested power: exact exponential tail.
    OutageCoefficients off{0.0, 0.0, 1.0, 7.0, 1.0 / 3.0};
    CHECK(outage_quadrature(off, kOmegaSr, kOmegaR1, 1.0, 1.0).p ==
          doctest::Approx(1.0 - std::exp(-7.0)).epsilon(1e-12));
    // Vanishing threshold: no outage.
    OutageCoefficients tiny{1.5, 3.0, 1.0, 1e-12, 1.0 / 3.0};
    CHECK(outage_quadrature(tiny, kOmegaSr, kOmegaR1, 1.0, 1.0).p < 1e-9);
}

TEST_CASE("closed form matches quadrature on the reference points") {
    CHECK(closed_vs_quad_gap(ts_point(), kOmegaSr, kOmegaR1, 1.0, 1.0) <= 1e-5);
    CHECK(closed_vs_quad_gap(ps_point(), kOmegaSr, kOmegaR1, 1.0, 1.0) <= 1e-5);
}

TEST_CASE("closed form matches quadrature across random operating points") {
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> log_a(-2.0, 2.0);
    std::uniform_real_distribution<double> b_over_a(0.5, 4.0);
    std::uniform_real_distribution<double> log_gain(-1.5, 2.5);
    std::uniform_real_distribution<double> log_p(-0.5, 2.0);
    std::uniform_real_distribution<double> r0_range(0.1, 40.0);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 60; ++trial) {
        OutageCoefficients k;
        k.a = std::pow(10.0, log_a(gen));
        k.b = k.a * b_over_a(gen);
        k.c = 1.0;
        k.r0 = r0_range(gen);
        k.rate_prefactor = 0.5;
        const double omega_sr = std::pow(10.0, log_gain(gen));
        const double omega_r1 = std::pow(10.0, log_gain(gen));
        const double p1 = std::pow(10.0, log_p(gen));
        // The series expansion carries terms that peak near exp(2 sqrt(W r0));
        // beyond W r0 ~ 100 it cannot be summed in double precision and the
        // implementation refuses (see the dedicated test below).
        if (k.r0 / (k.a * omega_sr * omega_r1) > 80.0) continue;
        ++checked;
        CAPTURE(trial);
        CAPTURE(k.a);
        CAPTURE(k.b);
        CAPTURE(k.r0);
        CAPTURE(omega_sr);
        CAPTURE(omega_r1);
        CAPTURE(p1);
        CHECK(closed_vs_quad_gap(k, omega_sr, omega_r1, 1.0, p1) <= 1e-5);
    }
    CHECK(checked >= 40);
}

TEST_CASE("series outside its summable domain reports non-convergence, not garbage") {
    // W r0 ~ 4e4: the expansion would need hundreds of terms and ~170 digits
    // of cancellation.
    OutageCoefficients k{0.04, 0.15, 1.0, 16.0, 0.5};
    CHECK_THROWS_AS(outage_closed_form(k, 0.3, 0.04, 1.0, 28.0), ConvergenceError);
    // The quadrature path stays healthy at the same point.
    const double q = outage_quadrature(k, 0.3, 0.04, 1.0, 28.0).p;
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
}

TEST_CASE("closed form handles the degenerate decay rate") {
    // omega_sr = 2 * omega_s1 with unit power makes the direct-link rate and
    // the relayed exponential rate coincide exactly.
    OutageCoefficients k{1.5, 3.0, 1.0, 7.0, 1.0 / 3.0};
    CHECK(closed_vs_quad_gap(k, 2.0, 1.0, 1.0, 1.0) <= 1e-5);
    // And just off the degenerate locus on both sides.
    CHECK(closed_vs_quad_gap(k, 2.0 * (1.0 + 1e-8), 1.0, 1.0, 1.0) <= 1e-5);
    CHECK(closed_vs_quad_gap(k, 2.0 * (1.0 - 1e-8), 1.0, 1.0, 1.0) <= 1e-5);
    CHECK(closed_vs_quad_gap(k, 2.0 * (1.0 + 1e-3), 1.0, 1.0, 1.0) <= 1e-5);
}

TEST_CASE("both analytic paths take the same no-relay reduction") {
    OutageCoefficients off{0.0, 0.0, 1.0, 3.0, 1.0 / 3.0};
    const double quad = outage_quadrature(off, kOmegaSr, kOmegaR1, 1.0, 2.0).p;
    const double closed = outage_closed_form(off, kOmegaSr, kOmegaR1, 1.0, 2.0).p;
    const double expected = 1.0 - std::exp(-3.0 / 2.0);
    CHECK(quad == doctest::Approx(expected).epsilon(1e-12));
    CHECK(closed == quad);
}

TEST_CASE("closed form is monotone in the threshold") {
    OutageCoefficients k = ts_point();
    double prev = 0.0;
    for (double r0 = 0.5; r0 <= 24.0; r0 += 0.5) {
        k.r0 = r0;
        const double p = outage_closed_form(k, kOmegaSr, kOmegaR1, 1.0, 1.0).p;
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("outage never worsens with better channels or more power") {
    OutageCoefficients k = ts_point();
    const double base = outage_quadrature(k, kOmegaSr, kOmegaR1, 1.0, 1.0).p;
    CHECK(outage_quadrature(k, 2.0 * kOmegaSr, kOmegaR1, 1.0, 1.0).p <= base);
    CHECK(outage_quadrature(k, kOmegaSr, 2.0 * kOmegaR1, 1.0, 1.0).p <= base);
    CHECK(outage_quadrature(k, kOmegaSr, kOmegaR1, 2.0, 1.0).p <= base);
    CHECK(outage_quadrature(k, kOmegaSr, kOmegaR1, 1.0, 2.0).p <= base);
}

TEST_CASE("series diagnostics expose a tail bound below the truncation tolerance") {
    SeriesPolicy policy;
    SeriesDiagnostics diag;
    const auto result =
        outage_closed_form(ts_point(), kOmegaSr, kOmegaR1, 1.0, 1.0, policy, {}, &diag);
    CHECK(diag.terms_used >= 1);
    CHECK(diag.tail_bound <= policy.term_rel_tol * std::fabs(result.p));
}

TEST_CASE("series that cannot settle reports a convergence error with the partial sum") {
    SeriesPolicy starved;
    starved.max_terms = 1;
    starved.term_rel_tol = 1e-16;
    try {
        outage_closed_form(ts_point(), kOmegaSr, kOmegaR1, 1.0, 1.0, starved);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_estimate >= 0.0);
        CHECK(e.best_estimate <= 1.0);
    }
}

TEST_CASE("non-cooperative baseline") {
    CHECK(outage_noncooperative(1.0, 1.0, 1.0).p == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-12));
    CHECK(outage_noncooperative(1e12, 1.0, 1.0).p < 1e-9);
    CHECK(outage_noncooperative(1.0, 1.0, 1e-12).p < 1e-9);
}

TEST_CASE("saturated operating points return probability one") {
    OutageCoefficients k = ts_point();
    k.r0 = 1e7;
    CHECK(outage_quadrature(k, 1.0, 1.0, 1.0, 1.0).p == 1.0);
    CHECK(outage_closed_form(k, 1.0, 1.0, 1.0, 1.0).p == 1.0);
}
