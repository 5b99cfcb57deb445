#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace wavekin {

// Test-case initial data.

// ic I: omega * exp(-omega)
inline double ic_exp_decay(double omega) { return omega * std::exp(-omega); }

// ic II: smooth bump on [4, 6], exp(5 / ((omega-5)^2 - 1)) inside, 0 at and
// beyond the support boundary (limit convention).
inline double ic_bump(double omega) {
    const double r = std::abs(omega - 5.0);
    if (r >= 1.0) return 0.0;
    return std::exp(5.0 / (r * r - 1.0));
}

// ic III: indicator of [1/2, 3/2] (closed endpoints).
inline double ic_monodisperse(double omega) {
    return std::abs(omega - 1.0) <= 0.5 ? 1.0 : 0.0;
}

enum class IcKind { exp_decay, bump, monodisperse, custom };

inline IcKind ic_kind_from_name(const std::string& name) {
    if (name == "exp_decay") return IcKind::exp_decay;
    if (name == "bump") return IcKind::bump;
    if (name == "monodisperse") return IcKind::monodisperse;
    if (name == "custom") return IcKind::custom;
    throw std::invalid_argument("unknown initial condition: " + name);
}

inline std::function<double(double)> ic_function(IcKind kind) {
    switch (kind) {
        case IcKind::exp_decay: return [](double w) { return ic_exp_decay(w); };
        case IcKind::bump: return [](double w) { return ic_bump(w); };
        case IcKind::monodisperse: return [](double w) { return ic_monodisperse(w); };
        default: throw std::invalid_argument("custom initial condition needs a tabulated file");
    }
}

}  // namespace wavekin
