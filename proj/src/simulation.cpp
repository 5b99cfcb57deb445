#include "wavekin/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavekin {

void SimConfig::validate() const {
    params.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");
    if (!(omega_min > 0.0) || !(omega_min < omega_max))
        throw std::invalid_argument("need 0 < omega_min < omega_max");
    if (cells < 2) throw std::invalid_argument("cells must be >= 2");
    for (double t : snapshot_times)
        if (t < 0.0 || t > t_end) throw std::invalid_argument("snapshot_times must lie in [0, t_end]");
    if (ic == IcKind::custom && !custom_ic)
        throw std::invalid_argument("custom initial condition requires a density function");
}

Observables observables(const StateVector& n, const Grid& g, const DispersionRelation& d) {
    if (static_cast<int>(n.size()) != g.size())
        throw std::invalid_argument("observables: state length does not match grid");
    Observables out;
    for (int i = 0; i < g.size(); ++i) {
        const double w = g.pivot(i);
        const double k = k_of_omega(w, d);
        const double weight = k * k * dk_of_omega(w, d) * n[static_cast<std::size_t>(i)];
        out.mass += weight;
        out.energy += w * weight;
        out.m3 += w * w * w * weight;
    }
    return out;
}

StateVector project_initial_condition(const std::function<double(double)>& f, const Grid& g) {
    constexpr int subpanels = 64;
    StateVector n(static_cast<std::size_t>(g.size()), 0.0);
    for (int i = 0; i < g.size(); ++i) {
        const double a = g.edge(i), b = g.edge(i + 1);
        const double h = (b - a) / (2 * subpanels);
        double acc = 0.0;
        for (int p = 0; p < subpanels; ++p) {
            const double x0 = a + 2 * p * h, x1 = x0 + h, x2 = x0 + 2 * h;
            const double f0 = f(x0), f1 = f(x1), f2 = f(x2);
            if (f0 < 0.0 || f1 < 0.0 || f2 < 0.0)
                throw std::invalid_argument("initial density must be non-negative");
            acc += (h / 3.0) * (f0 + 4.0 * f1 + f2);
        }
        n[static_cast<std::size_t>(i)] = acc;
    }
    return n;
}

StateVector project_indicator(double a, double b, double height, const Grid& g) {
    if (!(a < b) || height < 0.0) throw std::invalid_argument("bad indicator initial data");
    StateVector n(static_cast<std::size_t>(g.size()), 0.0);
    for (int i = 0; i < g.size(); ++i) {
        const double lo = std::max(a, g.edge(i));
        const double hi = std::min(b, g.edge(i + 1));
        if (hi > lo) n[static_cast<std::size_t>(i)] = height * (hi - lo);
    }
    return n;
}

StateVector project_ic(const SimConfig& cfg, const Grid& g) {
    switch (cfg.ic) {
        case IcKind::monodisperse: return project_indicator(0.5, 1.5, 1.0, g);
        case IcKind::custom: return project_initial_condition(cfg.custom_ic, g);
        default: return project_initial_condition(ic_function(cfg.ic), g);
    }
}

namespace {

StateVector axpy(const StateVector& base, double a, const StateVector& d) {
    StateVector out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + a * d[i];
    return out;
}

}  // namespace

StateVector step(const StateVector& n, const OperatorContext& ctx, double dt, Integrator method,
                 bool negativity_clamp, std::uint64_t* clamped_out, RhsDiagnostics* diag) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    StateVector out;
    if (method == Integrator::euler) {
        out = axpy(n, dt, rhs(n, ctx, diag));
    } else {
        const StateVector k1 = rhs(n, ctx, diag);
        const StateVector k2 = rhs(axpy(n, 0.5 * dt, k1), ctx, diag);
        const StateVector k3 = rhs(axpy(n, 0.5 * dt, k2), ctx, diag);
        const StateVector k4 = rhs(axpy(n, dt, k3), ctx, diag);
        out.resize(n.size());
        for (std::size_t i = 0; i < n.size(); ++i)
            out[i] = n[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (negativity_clamp) {
        std::uint64_t clamped = 0;
        for (auto& v : out)
            if (v < 0.0) {
                v = 0.0;
                ++clamped;
            }
        if (clamped_out) *clamped_out = clamped;
    } else if (clamped_out) {
        *clamped_out = 0;
    }
    return out;
}

RunResult run(const SimConfig& cfg) {
    cfg.validate();
    Grid grid = Grid::uniform(cfg.omega_min, cfg.omega_max, cfg.cells);
    OperatorContext ctx(grid, cfg.params, cfg.disp);
    ctx.threads = cfg.threads;

    RunResult res{std::move(grid), {}, {}, {}, {}, 0, false, {}};
    const Grid& g = ctx.grid;

    StateVector n = project_ic(cfg, g);

    const long long steps = std::llround(cfg.t_end / cfg.dt);
    std::vector<double> snapshot_times = cfg.snapshot_times;
    if (snapshot_times.empty()) snapshot_times = {0.0, cfg.t_end};

    auto record = [&](double t, std::uint64_t events) {
        const Observables o = observables(n, g, cfg.disp);
        res.series.times.push_back(t);
        res.series.mass.push_back(o.mass);
        res.series.energy.push_back(o.energy);
        res.series.m3.push_back(o.m3);
        res.series.negativity_events.push_back(events);
        res.series.l1.push_back(l1_norm(n));
        res.series.min_n.push_back(*std::min_element(n.begin(), n.end()));
    };
    auto snapshot_due = [&](long long k) {
        for (double ts : snapshot_times)
            if (std::llround(ts / cfg.dt) == k || (k == steps && ts >= cfg.t_end)) return true;
        return false;
    };
    auto take_snapshot = [&](long long k, double t) {
        if (snapshot_due(k)) res.snapshots.emplace_back(t, n);
    };

    auto count_negative = [&]() {
        std::uint64_t c = 0;
        for (double v : n)
            if (v < 0.0) ++c;
        return c;
    };

    record(0.0, count_negative());
    take_snapshot(0, 0.0);

    for (long long k = 1; k <= steps; ++k) {
        std::uint64_t clamped = 0;
        n = step(n, ctx, cfg.dt, cfg.integrator, cfg.negativity_clamp, &clamped, &res.diagnostics);
        for (double v : n) {
            if (!std::isfinite(v)) {
                res.aborted_nonfinite = true;
                break;
            }
        }
        if (res.aborted_nonfinite) break;  // series keeps only finite rows
        const double t = static_cast<double>(k) * cfg.dt;
        const std::uint64_t events = cfg.negativity_clamp ? clamped : count_negative();
        res.total_negativity_events += events;
        record(t, events);
        take_snapshot(k, t);
    }

    const std::uint64_t budget =
        static_cast<std::uint64_t>(g.size()) * static_cast<std::uint64_t>(steps > 0 ? steps : 1);
    if (res.total_negativity_events * 100 > budget)
        res.warning = "negativity events exceed 1% of components*steps";

    res.final_state = n;
    return res;
}

}  // namespace wavekin
