#include <doctest.h>

#include <cmath>

#include "wavekin/simulation.hpp"

using namespace wavekin;

namespace {
bool rel_close(double a, double b, double tol) {
    if (a == b) return true;
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("initial condition formulas") {
    CHECK(ic_exp_decay(0.0) == 0.0);
    CHECK(ic_exp_decay(1.0) == doctest::Approx(0.3678794411714423).epsilon(1e-14));
    CHECK(ic_exp_decay(10.0) == doctest::Approx(10.0 * std::exp(-10.0)).epsilon(1e-14));

    CHECK(ic_bump(5.0) == doctest::Approx(std::exp(-5.0)).epsilon(1e-14));
    CHECK(ic_bump(6.5) == 0.0);
    CHECK(ic_bump(4.0) == 0.0);  // support boundary, limit convention
    CHECK(ic_bump(6.0) == 0.0);
    CHECK(ic_bump(4.5) > 0.0);

    CHECK(ic_monodisperse(1.0) == 1.0);
    CHECK(ic_monodisperse(0.4) == 0.0);
    CHECK(ic_monodisperse(0.5) == 1.0);  // closed endpoint
    CHECK(ic_monodisperse(1.5) == 1.0);
    CHECK(ic_monodisperse(1.6) == 0.0);
}

TEST_CASE("projection: zero, constants, closed forms") {
    const Grid g = Grid::uniform(1e-9, 2.0, 4);

    const StateVector zero = project_initial_condition([](double) { return 0.0; }, g);
    for (double v : zero) CHECK(v == 0.0);

    // exact for constants: cell mass equals width
    const StateVector ones = project_initial_condition([](double) { return 1.0; }, g);
    for (int i = 0; i < 4; ++i)
        CHECK(ones[static_cast<std::size_t>(i)] == doctest::Approx(g.width(i)).epsilon(1e-14));

    // indicator of [0.5, 1.5] via exact overlap: intersection lengths
    const StateVector ind = project_indicator(0.5, 1.5, 1.0, g);
    for (int i = 0; i < 4; ++i) {
        const double lo = std::max(0.5, g.edge(i));
        const double hi = std::min(1.5, g.edge(i + 1));
        CHECK(ind[static_cast<std::size_t>(i)] == (hi > lo ? hi - lo : 0.0));
    }
    CHECK(ind[0] == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(ind[1] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(ind[2] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(ind[3] == doctest::Approx(0.0).epsilon(1e-8));

    // integral of w*exp(-w) over [1, 1.5] has a closed-form antiderivative
    const Grid single({1.0, 1.5, 2.0});
    const StateVector n =
        project_initial_condition([](double w) { return ic_exp_decay(w); }, single);
    const double expected = 2.0 * std::exp(-1.0) - 2.5 * std::exp(-1.5);
    CHECK(rel_close(n[0], expected, 1e-8));

    CHECK_THROWS_AS(project_initial_condition([](double) { return -1.0; }, g),
                    std::invalid_argument);
}

TEST_CASE("projection matches the exp-decay antiderivative per cell") {
    const Grid g = Grid::uniform(1e-9, 10.0, 30);
    const StateVector n = project_initial_condition([](double w) { return ic_exp_decay(w); }, g);
    for (int i = 0; i < 30; ++i) {
        const double a = g.edge(i), b = g.edge(i + 1);
        const double exact = (a + 1.0) * std::exp(-a) - (b + 1.0) * std::exp(-b);
        CHECK(rel_close(n[static_cast<std::size_t>(i)], exact, 1e-8));
    }
}

TEST_CASE("observables carry the |k|^2 |k|' measure weight") {
    const DispersionRelation d(2.0);
    const Grid g({0.5, 1.5});  // single cell, pivot 1
    StateVector n{2.0};
    const Observables o = observables(n, g, d);
    CHECK(o.energy == doctest::Approx(1.0).epsilon(1e-14));  // 2 * 1 * 1 * 0.5
    CHECK(o.m3 == o.energy);                                 // pivot at unity
    CHECK(o.mass == doctest::Approx(1.0).epsilon(1e-14));

    const StateVector zero{0.0};
    const Observables z = observables(zero, g, d);
    CHECK(z.mass == 0.0);
    CHECK(z.energy == 0.0);
    CHECK(z.m3 == 0.0);
}

TEST_CASE("explicit steps follow their definitions") {
    OperatorContext ctx(Grid::uniform(1e-9, 10.0, 8), KernelParams{1.0, 1.0, 0.5, 0.5},
                        DispersionRelation(2.0));
    const StateVector zero(8, 0.0);
    for (double v : step(zero, ctx, 0.1, Integrator::euler)) CHECK(v == 0.0);
    for (double v : step(zero, ctx, 0.1, Integrator::rk4)) CHECK(v == 0.0);

    StateVector n(8, 0.0);
    n[2] = 0.7;
    n[5] = 0.3;
    const StateVector r = rhs(n, ctx);
    const StateVector e = step(n, ctx, 0.05, Integrator::euler);
    for (std::size_t i = 0; i < n.size(); ++i) CHECK(e[i] == n[i] + 0.05 * r[i]);

    CHECK_THROWS_AS(step(n, ctx, 0.0, Integrator::euler), std::invalid_argument);
}

TEST_CASE("negativity clamp zeroes undershoots and counts them") {
    // forced undershoot: large dt on a loss-dominated configuration
    OperatorContext ctx(Grid::uniform(1e-9, 10.0, 8), KernelParams{0.0, 5.0, 0.0, 0.5},
                        DispersionRelation(2.0));
    StateVector n(8, 1.0);
    std::uint64_t clamped = 0;
    const StateVector s = step(n, ctx, 50.0, Integrator::euler, true, &clamped);
    CHECK(clamped > 0);
    for (double v : s) CHECK(v >= 0.0);
}

TEST_CASE("run: trivial horizons and the frozen operator") {
    SimConfig cfg;
    cfg.t_end = 0.0;
    const RunResult r = run(cfg);
    CHECK(r.series.times.size() == 1);
    CHECK(r.snapshots.size() == 1);
    const StateVector expected = project_ic(cfg, r.grid);
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(r.final_state[i] == expected[i]);

    SimConfig off;
    off.params.c1 = 0.0;
    off.params.c2 = 0.0;
    off.t_end = 2.0;
    const RunResult ro = run(off);
    CHECK(ro.series.times.size() == 21);
    for (double e : ro.series.energy) CHECK(e == ro.series.energy.front());
    const StateVector frozen = project_ic(off, ro.grid);
    for (std::size_t i = 0; i < ro.final_state.size(); ++i)
        CHECK(ro.final_state[i] == frozen[i]);
}

TEST_CASE("run: Test I decays and stays non-negative") {
    SimConfig cfg;  // Test I defaults
    const RunResult r = run(cfg);
    CHECK(r.series.times.size() == 301);
    CHECK(!r.aborted_nonfinite);
    CHECK(r.total_negativity_events == 0);
    CHECK(r.series.energy.back() < r.series.energy.front());
    CHECK(r.series.m3.back() < r.series.m3.front());
    for (double v : r.series.min_n) CHECK(v >= 0.0);
}

TEST_CASE("integrator consistency: halving dt moves euler toward rk4") {
    SimConfig base;  // Test I
    base.t_end = 5.0;

    SimConfig rk = base;
    rk.integrator = Integrator::rk4;
    const StateVector ref = run(rk).final_state;

    const StateVector e1 = run(base).final_state;
    SimConfig fine = base;
    fine.dt = 0.05;
    const StateVector e2 = run(fine).final_state;

    double d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        d1 += std::abs(e1[i] - ref[i]);
        d2 += std::abs(e2[i] - ref[i]);
    }
    CHECK(d2 < d1);
    CHECK(d1 > 0.0);
}

TEST_CASE("config validation rejects bad setups") {
    SimConfig cfg;
    cfg.dt = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SimConfig{};
    cfg.snapshot_times = {40.0};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SimConfig{};
    cfg.omega_min = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("frozen operator yields an identically zero rate") {
    SimConfig cfg;
    cfg.params.c1 = 0.0;
    cfg.params.c2 = 0.0;
    OperatorContext ctx(Grid::uniform(1e-9, 10.0, 6), cfg.params, cfg.disp);
    const StateVector n = project_ic(cfg, ctx.grid);
    for (double v : rhs(n, ctx)) CHECK(v == 0.0);
}
