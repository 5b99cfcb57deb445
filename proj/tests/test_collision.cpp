#include <doctest.h>

#include <cmath>

#include "wavekin/collision.hpp"
#include "wavekin/prng.hpp"

using namespace wavekin;

namespace {

double rel_dev(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double denom = std::max(std::abs(a[i]), std::abs(b[i]));
        if (denom > 0.0) worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
    }
    return worst;
}

StateVector random_state(SplitMix64& rng, int n) {
    StateVector v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.next_double();
    return v;
}

}  // namespace

TEST_CASE("zero state maps to zero rate") {
    OperatorContext ctx(Grid::uniform(1e-9, 10.0, 12), KernelParams{1.0, 1.0, 0.5, 0.5},
                        DispersionRelation(2.0));
    const StateVector zero(12, 0.0);
    for (double v : rhs(zero, ctx)) CHECK(v == 0.0);
    for (double v : brute_force_rhs(zero, ctx)) CHECK(v == 0.0);
}

TEST_CASE("single mode, three-wave only: closed-form gain and loss") {
    const DispersionRelation d(2.0);
    const KernelParams p{0.0, 1.0, 0.0, 0.5};  // c1 = 0
    const Grid g = Grid::uniform(1e-9, 10.0, 16);
    OperatorContext ctx(g, p, d);

    const int m = 5;
    const double nm = 0.8;
    StateVector n(16, 0.0);
    n[m] = nm;

    const StateVector rate = rhs(n, ctx);
    const auto gain_cell = ctx.grid.locate(sum_value(ctx.grid, m, m));
    REQUIRE(gain_cell.has_value());

    for (int i = 0; i < 16; ++i) {
        if (i == *gain_cell) {
            const double expected =
                kernel_k4(sum_value(ctx.grid, m, m), ctx.grid.pivot(m), p, d) * nm * nm;
            CHECK(rate[static_cast<std::size_t>(i)] ==
                  doctest::Approx(expected).epsilon(1e-13));
        } else if (i == m) {
            const double expected =
                -kernel_k5(ctx.grid.pivot(m), ctx.grid.pivot(m), p, d) * nm * nm;
            CHECK(rate[static_cast<std::size_t>(i)] ==
                  doctest::Approx(expected).epsilon(1e-13));
        } else {
            CHECK(rate[static_cast<std::size_t>(i)] == 0.0);
        }
    }
    CHECK(rel_dev(rate, brute_force_rhs(n, ctx)) == 0.0);
}

TEST_CASE("operator matches the exhaustive reference on random states") {
    SplitMix64 rng(42);
    for (double rho : {1.0, 2.0, 3.0}) {
        for (double c1 : {0.0, 1.0}) {
            for (double c2 : {0.0, 1.0}) {
                OperatorContext ctx(Grid::uniform(1e-9, 10.0, 8),
                                    KernelParams{c1, c2, 0.5, 0.5}, DispersionRelation(rho));
                for (int t = 0; t < 10; ++t) {
                    const StateVector n = random_state(rng, 8);
                    CHECK(rel_dev(rhs(n, ctx), brute_force_rhs(n, ctx)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("operator equivalence holds on a non-uniform custom mesh") {
    SplitMix64 rng(4242);
    std::vector<double> edges{0.02, 0.4, 0.9, 1.1, 2.3, 2.9, 4.5, 5.0, 7.2};
    OperatorContext ctx(Grid(std::move(edges)), KernelParams{1.0, 1.0, 0.5, 1.0},
                        DispersionRelation(2.0));
    for (int t = 0; t < 20; ++t) {
        const StateVector n = random_state(rng, ctx.grid.size());
        CHECK(rel_dev(rhs(n, ctx), brute_force_rhs(n, ctx)) < 1e-12);
    }
}

TEST_CASE("term-group accounting: the strength constants decouple the blocks") {
    SplitMix64 rng(7);
    const Grid g = Grid::uniform(1e-9, 10.0, 10);
    const DispersionRelation d(2.0);
    const StateVector n = random_state(rng, 10);

    OperatorContext three_only(g, KernelParams{0.0, 1.0, 0.5, 0.5}, d);
    TermMask no_three;
    no_three.three_wave = false;
    for (double v : rhs(n, three_only, nullptr, no_three)) CHECK(v == 0.0);

    OperatorContext four_only(g, KernelParams{1.0, 0.0, 0.5, 0.5}, d);
    TermMask only_three;
    only_three.k1_block = only_three.k2_block = only_three.k3_block = false;
    for (double v : rhs(n, four_only, nullptr, only_three)) CHECK(v == 0.0);

    // blocks recombine to the full rate
    OperatorContext full(g, KernelParams{1.0, 1.0, 0.5, 0.5}, d);
    const StateVector all = rhs(n, full);
    TermMask m1, m2;
    m1.three_wave = false;
    m2.k1_block = m2.k2_block = m2.k3_block = false;
    const StateVector a = rhs(n, full, nullptr, m1);
    const StateVector b = rhs(n, full, nullptr, m2);
    for (std::size_t i = 0; i < all.size(); ++i)
        CHECK(all[i] == doctest::Approx(a[i] + b[i]).epsilon(1e-14));
}

TEST_CASE("pure three-wave rate is homogeneous of degree 2") {
    SplitMix64 rng(11);
    OperatorContext ctx(Grid::uniform(1e-9, 10.0, 12), KernelParams{0.0, 1.0, 0.5, 0.5},
                        DispersionRelation(2.0));
    const StateVector n = random_state(rng, 12);
    const StateVector base = rhs(n, ctx);
    for (double lambda : {2.0, 10.0}) {
        StateVector scaled(n.size());
        for (std::size_t i = 0; i < n.size(); ++i) scaled[i] = lambda * n[i];
        const StateVector r = rhs(scaled, ctx);
        for (std::size_t i = 0; i < n.size(); ++i)
            CHECK(r[i] == doctest::Approx(lambda * lambda * base[i]).epsilon(1e-12));
    }
}

TEST_CASE("positivity flux check: trivial and structural cases") {
    OperatorContext ctx(Grid::uniform(1e-9, 10.0, 16), KernelParams{1.0, 1.0, 0.5, 0.5},
                        DispersionRelation(2.0));
    const StateVector zero(16, 0.0);
    for (int i = 0; i < 16; ++i) CHECK(positivity_flux_check(zero, i, ctx) == 0.0);

    // mass concentrated with no resonance path into the probed cell:
    // a single low mode cannot feed cell 1 (sums leave it, diffs vanish)
    StateVector n(16, 0.0);
    n[4] = 1.0;
    CHECK(positivity_flux_check(n, 1, ctx) == 0.0);

    StateVector bad(16, 0.0);
    bad[2] = -1.0;
    CHECK_THROWS_AS(positivity_flux_check(bad, 2, ctx), std::invalid_argument);
    StateVector nonzero(16, 1.0);
    CHECK_THROWS_AS(positivity_flux_check(nonzero, 3, ctx), std::invalid_argument);
}

TEST_CASE("lipschitz estimate: zero operator and scaling behaviour") {
    const Grid g = Grid::uniform(1e-9, 10.0, 12);
    OperatorContext off(g, KernelParams{0.0, 0.0, 0.5, 0.5}, DispersionRelation(2.0));
    CHECK(lipschitz_estimate(off, 1.0, 20, 5) == 0.0);

    OperatorContext ctx(g, KernelParams{1.0, 1.0, 0.5, 0.5}, DispersionRelation(2.0));
    const double small = lipschitz_estimate(ctx, 0.5, 50, 5);
    const double large = lipschitz_estimate(ctx, 1.0, 50, 5);
    CHECK(small > 0.0);
    CHECK(large > small);          // quadratic/cubic terms grow with the ball
    CHECK(large < 16.0 * small);   // and no faster than the cubic scaling allows
}

TEST_CASE("dimension mismatch is rejected") {
    OperatorContext ctx(Grid::uniform(1e-9, 10.0, 8), KernelParams{}, DispersionRelation(2.0));
    const StateVector wrong(7, 0.0);
    CHECK_THROWS_AS(rhs(wrong, ctx), std::invalid_argument);
}

TEST_CASE("negative control: a perturbed kernel breaks oracle agreement") {
    SplitMix64 rng(3);
    OperatorContext ctx(Grid::uniform(1e-9, 10.0, 8), KernelParams{1.0, 1.0, 0.5, 0.5},
                        DispersionRelation(2.0));
    ctx.debug_k1_scale = 1.0 + 1e-6;
    const StateVector n = random_state(rng, 8);
    CHECK(rel_dev(rhs(n, ctx), brute_force_rhs(n, ctx)) > 1e-9);
}

TEST_CASE("threaded evaluation is bit-identical to serial") {
    SplitMix64 rng(77);
    OperatorContext ctx(Grid::uniform(1e-9, 10.0, 24), KernelParams{1.0, 1.0, 0.5, 0.5},
                        DispersionRelation(2.0));
    const StateVector n = random_state(rng, 24);
    const StateVector serial = rhs(n, ctx);
    ctx.threads = 4;
    const StateVector threaded = rhs(n, ctx);
    for (std::size_t i = 0; i < n.size(); ++i) CHECK(serial[i] == threaded[i]);
}
