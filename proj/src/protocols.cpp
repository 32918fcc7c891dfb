#include "ehrelay/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace ehrelay {

void TsParams::validate() const {
    if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("TsParams: 0 <= rho < 1 required");
}

void PsParams::validate() const {
    if (!(alpha1 >= 0.0 && alpha1 < 1.0)) throw std::invalid_argument("PsParams: 0 <= alpha1 < 1 required");
    if (!(alpha2 >= 0.0 && alpha2 < 1.0)) throw std::invalid_argument("PsParams: 0 <= alpha2 < 1 required");
}

void OutageCoefficients::validate() const {
    if (!(a >= 0.0)) throw std::invalid_argument("OutageCoefficients: a >= 0 required");
    if (!(b >= 0.0)) throw std::invalid_argument("OutageCoefficients: b >= 0 required");
    if (!(c > 0.0)) throw std::invalid_argument("OutageCoefficients: c > 0 required");
    if (!(r0 > 0.0)) throw std::invalid_argument("OutageCoefficients: r0 > 0 required");
    if (!(rate_prefactor > 0.0 && rate_prefactor < 1.0)) {
        throw std::invalid_argument("OutageCoefficients: rate_prefactor in (0,1) required");
    }
}

OutageCoefficients ts_coefficients(const SystemConfig& cfg, const TsParams& params) {
    cfg.validate();
    params.validate();
    OutageCoefficients k;
    const double rho = params.rho;
    k.a = 1.5 * rho / (1.0 - rho) * cfg.eta * (cfg.p1 + cfg.p2) * cfg.theta1;
    if (k.a > 0.0) {
        // With harvesting active the relay amplifies both messages; the
        // combining weights assume both source powers are positive.
        if (!(cfg.p1 > 0.0 && cfg.p2 > 0.0)) {
            throw std::domain_error("ts_coefficients: harvesting requires p1 > 0 and p2 > 0");
        }
        k.b = k.a / cfg.p2 + k.a * cfg.theta1 / (cfg.p1 * cfg.theta2());
    } else {
        k.b = 0.0;
    }
    k.c = 1.0;
    k.r0 = std::exp2(1.5 * cfg.rt / (1.0 - rho)) - 1.0;
    k.rate_prefactor = 2.0 * (1.0 - rho) / 3.0;
    return k;
}

OutageCoefficients ps_coefficients(const SystemConfig& cfg, const PsParams& params) {
    cfg.validate();
    params.validate();
    OutageCoefficients k;
    k.a = cfg.eta * (params.alpha1 * cfg.p1 + params.alpha2 * cfg.p2) * cfg.theta1;
    if (k.a > 0.0) {
        if (!(cfg.p1 > 0.0 && cfg.p2 > 0.0)) {
            throw std::domain_error("ps_coefficients: harvesting requires p1 > 0 and p2 > 0");
        }
        k.b = k.a / (cfg.p2 * (1.0 - params.alpha2)) +
              k.a * cfg.theta1 / (cfg.theta2() * cfg.p1 * (1.0 - params.alpha1));
    } else {
        k.b = 0.0;
    }
    k.c = 1.0;
    k.r0 = std::exp2(1.5 * cfg.rt) - 1.0;
    k.rate_prefactor = 2.0 / 3.0;
    return k;
}

double instantaneous_relay_snr(const OutageCoefficients& coeffs, double x_sr, double x_r1) {
    if (!(x_sr >= 0.0 && x_r1 >= 0.0)) {
        throw std::domain_error("instantaneous_relay_snr: channel powers must be >= 0");
    }
    if (coeffs.a == 0.0) return 0.0;
    return coeffs.a * x_sr * x_r1 / (coeffs.b * x_r1 + coeffs.c);
}

double mutual_information(const OutageCoefficients& coeffs, double gamma0, double gamma1) {
    if (!(gamma0 >= 0.0 && gamma1 >= 0.0)) {
        throw std::domain_error("mutual_information: SNRs must be >= 0");
    }
    return coeffs.rate_prefactor * std::log2(1.0 + gamma0 + gamma1);
}

double relay_transmit_power(const SystemConfig& cfg, const TsParams& params, double x_sr) {
    cfg.validate();
    params.validate();
    if (!(x_sr >= 0.0)) throw std::domain_error("relay_transmit_power: x_sr >= 0 required");
    return 1.5 * params.rho / (1.0 - params.rho) * cfg.eta * (cfg.p1 + cfg.p2) * x_sr;
}

double relay_transmit_power(const SystemConfig& cfg, const PsParams& params, double x_sr) {
    cfg.validate();
    params.validate();
    if (!(x_sr >= 0.0)) throw std::domain_error("relay_transmit_power: x_sr >= 0 required");
    return cfg.eta * (params.alpha1 * cfg.p1 + params.alpha2 * cfg.p2) * x_sr;
}

double combining_weight(double theta_i, double p_i, double x_sr, bool exact) {
    if (!(theta_i > 0.0 && theta_i < 1.0)) throw std::domain_error("combining_weight: 0 < theta < 1 required");
    if (!(p_i > 0.0)) throw std::domain_error("combining_weight: p > 0 required");
    if (exact) {
        if (!(x_sr >= 0.0)) throw std::domain_error("combining_weight: x_sr >= 0 required");
        return std::sqrt(theta_i / (p_i * x_sr + 1.0));
    }
    if (!(x_sr > 0.0)) throw std::domain_error("combining_weight: approximate form requires x_sr > 0");
    return std::sqrt(theta_i / (p_i * x_sr));
}

} // namespace ehrelay
