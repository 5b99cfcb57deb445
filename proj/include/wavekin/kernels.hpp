#pragma once

#include <cmath>
#include <stdexcept>

#include "wavekin/dispersion.hpp"

namespace wavekin {

// Strengths and homogeneity degrees of the collision kernels.
// c1/sigma drive the four-wave kernels (k1..k3), c2/gamma the
// three-wave kernels (k4..k7).
struct KernelParams {
    double c1 = 1.0;     // four-wave strength, >= 0
    double c2 = 1.0;     // three-wave strength, >= 0
    double sigma = 0.5;  // four-wave homogeneity, >= 0
    double gamma = 0.5;  // three-wave homogeneity, >= 0

    void validate() const {
        if (!(c1 >= 0.0)) throw std::invalid_argument("c1 must be >= 0");
        if (!(c2 >= 0.0)) throw std::invalid_argument("c2 must be >= 0");
        if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
        if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    }
};

namespace detail {
inline double pow_or_one(double base, double expo) {
    return expo == 0.0 ? 1.0 : std::pow(base, expo);
}
}  // namespace detail

// Four-wave kernels take (omega, mu, eta); the fourth frequency is fixed by
// resonance as nu = omega + mu - eta. All frequencies must be positive.

// k1: the sign-indefinite correction kernel. Sign equals
// sign(|k|(mu) - 2|k|(eta)); negative on its native region mu < eta.
inline double kernel_k1(double omega, double mu, double eta, const KernelParams& p,
                        const DispersionRelation& d) {
    const double nu = omega + mu - eta;
    if (!(omega > 0.0) || !(mu > 0.0) || !(eta > 0.0) || !(nu > 0.0))
        throw std::domain_error("kernel_k1: frequencies must be positive");
    const double km = k_of_omega(mu, d), ke = k_of_omega(eta, d), kn = k_of_omega(nu, d);
    return p.c1 / k_of_omega(omega, d) * dk_of_omega(mu, d) * dk_of_omega(eta, d) *
           dk_of_omega(nu, d) * km * ke * kn * (km - 2.0 * ke) *
           detail::pow_or_one(omega * mu * eta * nu, p.sigma);
}

// k2: carries an extra |k|(eta) factor and a factor 2; non-negative.
inline double kernel_k2(double omega, double mu, double eta, const KernelParams& p,
                        const DispersionRelation& d) {
    const double nu = omega + mu - eta;
    if (!(omega > 0.0) || !(mu > 0.0) || !(eta > 0.0) || !(nu > 0.0))
        throw std::domain_error("kernel_k2: frequencies must be positive");
    const double km = k_of_omega(mu, d), ke = k_of_omega(eta, d), kn = k_of_omega(nu, d);
    return 2.0 * p.c1 / k_of_omega(omega, d) * dk_of_omega(mu, d) * dk_of_omega(eta, d) *
           dk_of_omega(nu, d) * km * ke * ke * kn *
           detail::pow_or_one(omega * mu * eta * nu, p.sigma);
}

// k3: no 1/|k|(omega) prefactor; non-negative.
inline double kernel_k3(double omega, double mu, double eta, const KernelParams& p,
                        const DispersionRelation& d) {
    const double nu = omega + mu - eta;
    if (!(omega > 0.0) || !(mu > 0.0) || !(eta > 0.0) || !(nu > 0.0))
        throw std::domain_error("kernel_k3: frequencies must be positive");
    const double km = k_of_omega(mu, d), ke = k_of_omega(eta, d), kn = k_of_omega(nu, d);
    return p.c1 * dk_of_omega(mu, d) * dk_of_omega(eta, d) * dk_of_omega(nu, d) * km * ke * kn *
           detail::pow_or_one(omega * mu * eta * nu, p.sigma);
}

// Three-wave kernels take (omega, mu).

// k4: merging gain kernel, domain 0 < mu < omega. Symmetric under
// mu <-> omega - mu.
inline double kernel_k4(double omega, double mu, const KernelParams& p,
                        const DispersionRelation& d) {
    if (!(mu > 0.0) || !(mu < omega)) throw std::domain_error("kernel_k4: need 0 < mu < omega");
    const double rem = omega - mu;
    return p.c2 * k_of_omega(mu, d) * k_of_omega(rem, d) / k_of_omega(omega, d) *
           dk_of_omega(mu, d) * dk_of_omega(rem, d) *
           detail::pow_or_one(omega * mu * rem, p.gamma);
}

// k5: loss against the whole spectrum, domain omega, mu > 0.
inline double kernel_k5(double omega, double mu, const KernelParams& p,
                        const DispersionRelation& d) {
    if (!(omega > 0.0) || !(mu > 0.0)) throw std::domain_error("kernel_k5: need omega, mu > 0");
    const double sum = omega + mu;
    return 2.0 * p.c2 * k_of_omega(mu, d) * k_of_omega(sum, d) / k_of_omega(omega, d) *
           dk_of_omega(mu, d) * dk_of_omega(sum, d) *
           detail::pow_or_one(omega * mu * sum, p.gamma);
}

// k6 is exactly twice k4 (same floating expression up to the factor).
inline double kernel_k6(double omega, double mu, const KernelParams& p,
                        const DispersionRelation& d) {
    if (!(mu > 0.0) || !(mu < omega)) throw std::domain_error("kernel_k6: need 0 < mu < omega");
    return 2.0 * kernel_k4(omega, mu, p, d);
}

// k7: splitting kernel, domain 0 < omega < mu.
inline double kernel_k7(double omega, double mu, const KernelParams& p,
                        const DispersionRelation& d) {
    if (!(omega > 0.0) || !(mu > omega)) throw std::domain_error("kernel_k7: need 0 < omega < mu");
    const double rem = mu - omega;
    return 2.0 * p.c2 * k_of_omega(mu, d) * k_of_omega(rem, d) / k_of_omega(omega, d) *
           dk_of_omega(mu, d) * dk_of_omega(rem, d) *
           detail::pow_or_one(omega * mu * rem, p.gamma);
}

}  // namespace wavekin
