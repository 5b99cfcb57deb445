#pragma once

#include <cmath>
#include <stdexcept>

namespace wavekin {

// Power-law dispersion: frequency = |k|^rho with rho >= 1.
// All kernel formulas need the inverse map |k|(omega) = omega^(1/rho)
// and its derivative.
struct DispersionRelation {
    double rho = 2.0;

    explicit DispersionRelation(double rho_ = 2.0) : rho(rho_) {
        if (!(rho >= 1.0)) throw std::invalid_argument("dispersion exponent rho must be >= 1");
    }
};

// |k|(omega) = omega^(1/rho), strictly increasing on (0, inf).
inline double k_of_omega(double omega, const DispersionRelation& d) {
    if (!(omega > 0.0)) throw std::domain_error("k_of_omega: omega must be > 0");
    if (d.rho == 1.0) return omega;
    if (d.rho == 2.0) return std::sqrt(omega);
    return std::pow(omega, 1.0 / d.rho);
}

// d|k|/domega = (1/rho) * omega^(1/rho - 1).
inline double dk_of_omega(double omega, const DispersionRelation& d) {
    if (!(omega > 0.0)) throw std::domain_error("dk_of_omega: omega must be > 0");
    if (d.rho == 1.0) return 1.0;
    if (d.rho == 2.0) return 0.5 / std::sqrt(omega);
    return (1.0 / d.rho) * std::pow(omega, 1.0 / d.rho - 1.0);
}

}  // namespace wavekin
