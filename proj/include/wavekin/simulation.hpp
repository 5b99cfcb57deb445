#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wavekin/collision.hpp"
#include "wavekin/grid.hpp"
#include "wavekin/initial_conditions.hpp"

namespace wavekin {

enum class Integrator { euler, rk4 };

inline Integrator integrator_from_name(const std::string& name) {
    if (name == "euler") return Integrator::euler;
    if (name == "rk4") return Integrator::rk4;
    throw std::invalid_argument("unknown integrator: " + name);
}

struct SimConfig {
    DispersionRelation disp{2.0};
    KernelParams params{};
    double omega_min = 1e-9;
    double omega_max = 10.0;
    int cells = 30;
    double dt = 0.1;
    double t_end = 30.0;
    IcKind ic = IcKind::exp_decay;
    std::function<double(double)> custom_ic;  // used when ic == custom
    Integrator integrator = Integrator::euler;
    std::vector<double> snapshot_times{};  // defaults to {0, t_end} when empty
    bool deterministic = true;
    bool negativity_clamp = false;
    int threads = 1;

    void validate() const;
};

// Per-step observable traces. mass/energy/m3 use the measure weight
// |k|^2(omega_i) |k|'(omega_i); the zeroth moment "mass" is an artifact
// extension with the same weight (the source equations define only E and
// M3). l1 and min_n are diagnostics for the boundedness and positivity
// checks and are not part of the CSV schema.
struct ObservableSeries {
    std::vector<double> times;
    std::vector<double> mass;
    std::vector<double> energy;
    std::vector<double> m3;
    std::vector<std::uint64_t> negativity_events;
    std::vector<double> l1;
    std::vector<double> min_n;
};

struct Observables {
    double mass = 0.0;
    double energy = 0.0;
    double m3 = 0.0;
};

Observables observables(const StateVector& n, const Grid& g, const DispersionRelation& d);

// Cell masses of a non-negative density: composite Simpson with 8 subpanels
// per cell. Throws if a sampled value is negative.
StateVector project_initial_condition(const std::function<double(double)>& f, const Grid& g);

// Exact overlap projection of height * indicator([a, b]).
StateVector project_indicator(double a, double b, double height, const Grid& g);

// Projection dispatch for the named initial data (exact overlap for the
// indicator-type case, Simpson otherwise).
StateVector project_ic(const SimConfig& cfg, const Grid& g);

// One explicit step. clamped_out, when given, receives the number of
// components clamped to zero (only when clamp is enabled).
StateVector step(const StateVector& n, const OperatorContext& ctx, double dt, Integrator method,
                 bool negativity_clamp = false, std::uint64_t* clamped_out = nullptr,
                 RhsDiagnostics* diag = nullptr);

struct RunResult {
    Grid grid;
    ObservableSeries series;
    // snapshot time -> cell masses N at that time; the plotted density is
    // the histogram reconstruction f_i = N_i / width_i
    std::vector<std::pair<double, StateVector>> snapshots;
    StateVector final_state;
    RhsDiagnostics diagnostics;
    std::uint64_t total_negativity_events = 0;
    bool aborted_nonfinite = false;
    std::string warning;
};

RunResult run(const SimConfig& cfg);

}  // namespace wavekin
