#include "wavekin/collision.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "wavekin/parallel.hpp"
#include "wavekin/prng.hpp"

namespace wavekin {
namespace {

// Guarded kernel evaluations shared by both operator variants. A composite
// frequency argument that comes out non-positive (possible only through
// floating-point edge effects at the domain boundary; the continuous
// integrals never sample there) drops the term and bumps the counter.
struct Guard {
    RhsDiagnostics* diag;
    void skip() const {
        if (diag) ++diag->nonpositive_skips;
    }
};

inline double k1_at(double w, double mu, double eta, const OperatorContext& ctx, const Guard& g,
                    double scale) {
    if (!(w > 0.0) || !(mu > 0.0) || !(eta > 0.0) || !(w + mu - eta > 0.0)) {
        g.skip();
        return 0.0;
    }
    return scale * kernel_k1(w, mu, eta, ctx.params, ctx.disp);
}

inline double k2_at(double w, double mu, double eta, const OperatorContext& ctx, const Guard& g) {
    if (!(w > 0.0) || !(mu > 0.0) || !(eta > 0.0) || !(w + mu - eta > 0.0)) {
        g.skip();
        return 0.0;
    }
    return kernel_k2(w, mu, eta, ctx.params, ctx.disp);
}

inline double k3_at(double w, double mu, double eta, const OperatorContext& ctx, const Guard& g) {
    if (!(w > 0.0) || !(mu > 0.0) || !(eta > 0.0) || !(w + mu - eta > 0.0)) {
        g.skip();
        return 0.0;
    }
    return kernel_k3(w, mu, eta, ctx.params, ctx.disp);
}

inline double k4_at(double w, double mu, const OperatorContext& ctx, const Guard& g) {
    if (!(mu > 0.0) || !(mu < w)) {
        g.skip();
        return 0.0;
    }
    return kernel_k4(w, mu, ctx.params, ctx.disp);
}

inline double k7_at(double w, double mu, const OperatorContext& ctx, const Guard& g) {
    if (!(w > 0.0) || !(mu > w)) {
        g.skip();
        return 0.0;
    }
    return kernel_k7(w, mu, ctx.params, ctx.disp);
}

double combine_terms(const std::array<double, 17>& q, const TermMask& mask) {
    double s = 0.0;
    if (mask.k1_block)
        for (int t = 0; t < 4; ++t) s += q[static_cast<std::size_t>(t)];
    if (mask.k2_block)
        for (int t = 4; t < 8; ++t) s += q[static_cast<std::size_t>(t)];
    if (mask.k3_block)
        for (int t = 8; t < 12; ++t) s += q[static_cast<std::size_t>(t)];
    if (mask.three_wave)
        for (int t = 12; t < 17; ++t) s += q[static_cast<std::size_t>(t)];
    return s;
}

}  // namespace

// Fast variant: window lookups (binary search over pivots) and the
// precomputed per-cell pair lists. Composite kernel arguments reuse the
// exact membership doubles.
std::array<double, 17> q_terms(int i, const StateVector& n, const OperatorContext& ctx,
                               RhsDiagnostics* diag) {
    const Grid& g = ctx.grid;
    const int I = g.size();
    const Guard gd{diag};
    const double scale1 = ctx.debug_k1_scale;
    std::array<double, 17> q{};

    if (ctx.params.c1 != 0.0) {
        // terms 1-4: low-frequency four-wave block, kernel k1
        double acc = 0.0;
        for (int j = 0; j <= i - 2; ++j)
            for (int k = j + 1; k <= i - 1; ++k) {
                const IndexRange r = theta_bar(g, i, k, j);
                for (int l = r.lo; l < r.hi; ++l) {
                    const double w = bar_value(g, l, k, j);
                    acc += k1_at(w, g.pivot(j), g.pivot(k), ctx, gd, scale1) * n[j] * n[k] * n[l];
                }
            }
        q[0] = acc;

        acc = 0.0;
        for (int j = 1; j <= i - 1; ++j)
            for (int k = 0; k <= j - 1; ++k) {
                const IndexRange r = theta_bar(g, k, j, i);
                for (int l = r.lo; l < r.hi; ++l) {
                    const double mu = bar_value(g, l, j, i);
                    acc += k1_at(g.pivot(i), mu, g.pivot(j), ctx, gd, scale1) * n[i] * n[j] * n[l];
                }
            }
        q[1] = acc;

        acc = 0.0;
        for (int j = 0; j <= i - 2; ++j)
            for (int k = j + 1; k <= i - 1; ++k)
                acc += k1_at(g.pivot(i), g.pivot(j), g.pivot(k), ctx, gd, scale1) * n[i] * n[j] * n[k];
        q[2] = -acc;

        acc = 0.0;
        for (int j = 0; j <= i - 2; ++j)
            for (int k = j + 1; k <= i - 1; ++k) {
                const IndexRange r = theta_hat(g, k, i, j);
                for (int l = r.lo; l < r.hi; ++l) {
                    const double eta = hat_value(g, i, j, l);
                    acc += k1_at(g.pivot(i), g.pivot(j), eta, ctx, gd, scale1) * n[i] * n[j] * n[l];
                }
            }
        q[3] = -acc;

        // terms 5-8: cross four-wave block, kernel k2
        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            for (int k = 0; k <= i - 1; ++k) {
                const IndexRange rt = theta_tilde(g, j, k);
                for (int l = rt.lo; l < rt.hi; ++l) {
                    const IndexRange rh = theta_hat(g, i, l, k);
                    for (int m = rh.lo; m < rh.hi; ++m) {
                        const double w = hat_value(g, l, k, m);
                        acc += k2_at(w, g.pivot(m), g.pivot(k), ctx, gd) * n[k] * n[l] * n[m];
                    }
                }
            }
        q[4] = acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            for (int k = 0; k <= i - 1; ++k) {
                const IndexRange rt = theta_tilde(g, j, k);
                for (int l = rt.lo; l < rt.hi; ++l) {
                    const double mu = bar_value(g, l, k, i);
                    acc += k2_at(g.pivot(i), mu, g.pivot(k), ctx, gd) * n[i] * n[k] * n[l];
                }
            }
        q[5] = acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            for (int k = 0; k <= i - 1; ++k) {
                const IndexRange rt = theta_tilde(g, j, i);
                for (int l = rt.lo; l < rt.hi; ++l)
                    acc += k2_at(g.pivot(i), g.pivot(l), g.pivot(k), ctx, gd) * n[i] * n[k] * n[l];
            }
        q[6] = -acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            for (int k = 0; k <= i - 1; ++k) {
                const IndexRange rt = theta_tilde(g, j, i);
                for (int l = rt.lo; l < rt.hi; ++l) {
                    const IndexRange rh = theta_hat(g, k, l, i);
                    for (int m = rh.lo; m < rh.hi; ++m) {
                        const double eta = hat_value(g, l, i, m);
                        acc += k2_at(g.pivot(i), g.pivot(l), eta, ctx, gd) * n[i] * n[l] * n[m];
                    }
                }
            }
        q[7] = -acc;

        // terms 9-12: high-frequency four-wave block, kernel k3
        acc = 0.0;
        for (int j = i + 2; j <= I - 1; ++j)
            for (int k = i + 1; k <= j - 1; ++k) {
                const IndexRange r = theta_bar(g, i, k, j);
                for (int l = r.lo; l < r.hi; ++l) {
                    const double w = bar_value(g, l, k, j);
                    acc += k3_at(w, g.pivot(j), g.pivot(k), ctx, gd) * n[j] * n[k] * n[l];
                }
            }
        q[8] = acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            for (int k = j + 1; k <= I - 1; ++k) {
                const IndexRange r = theta_bar(g, k, j, i);
                for (int m = r.lo; m < r.hi; ++m) {
                    const double mu = bar_value(g, m, j, i);
                    acc += k3_at(g.pivot(i), mu, g.pivot(j), ctx, gd) * n[i] * n[j] * n[m];
                }
            }
        q[9] = acc;

        acc = 0.0;
        for (int j = i + 2; j <= I - 1; ++j)
            for (int k = i + 1; k <= j - 1; ++k)
                acc += k3_at(g.pivot(i), g.pivot(j), g.pivot(k), ctx, gd) * n[i] * n[j] * n[k];
        q[10] = -acc;

        acc = 0.0;
        for (int j = i + 2; j <= I - 1; ++j)
            for (int k = i + 1; k <= j - 1; ++k) {
                const IndexRange r = theta_hat(g, k, i, j);
                for (int l = r.lo; l < r.hi; ++l) {
                    const double eta = hat_value(g, i, j, l);
                    acc += k3_at(g.pivot(i), g.pivot(j), eta, ctx, gd) * n[i] * n[j] * n[l];
                }
            }
        q[11] = -acc;
    }

    if (ctx.params.c2 != 0.0) {
        // terms 13-17: three-wave block, kernels k4-k7
        double acc = 0.0;
        for (const auto& [j, k] : ctx.tables.sum_pairs(i)) {
            const double s = sum_value(g, j, k);
            acc += k4_at(s, g.pivot(j), ctx, gd) * n[j] * n[k];
        }
        q[12] = acc;

        acc = 0.0;
        for (int j = 0; j <= I - 1; ++j)
            acc += kernel_k5(g.pivot(i), g.pivot(j), ctx.params, ctx.disp) * n[i] * n[j];
        q[13] = -acc;

        acc = 0.0;
        for (int j = 0; j <= i - 1; ++j)
            acc += kernel_k6(g.pivot(i), g.pivot(j), ctx.params, ctx.disp) * n[i] * n[j];
        q[14] = -acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            acc += kernel_k7(g.pivot(i), g.pivot(j), ctx.params, ctx.disp) * n[i] * n[j];
        q[15] = acc;

        acc = 0.0;
        for (const auto& [j, k] : ctx.tables.diff_pairs(i)) {
            const double d = diff_value(g, j, k);
            acc += k7_at(d, g.pivot(j), ctx, gd) * n[j] * n[k];
        }
        q[16] = acc;
    }

    return q;
}

// Reference variant: same sums, but every index tuple is enumerated
// exhaustively and membership is decided per tuple with the direct
// inequality predicate. No windows, no tables.
std::array<double, 17> q_terms_brute(int i, const StateVector& n, const OperatorContext& ctx,
                                     RhsDiagnostics* diag) {
    const Grid& g = ctx.grid;
    const int I = g.size();
    const Guard gd{diag};
    std::array<double, 17> q{};

    if (ctx.params.c1 != 0.0) {
        double acc = 0.0;
        for (int j = 0; j <= i - 2; ++j)
            for (int k = j + 1; k <= i - 1; ++k)
                for (int l = 0; l <= I - 1; ++l) {
                    const double w = bar_value(g, l, k, j);
                    if (!g.cell_contains(i, w)) continue;
                    acc += k1_at(w, g.pivot(j), g.pivot(k), ctx, gd, 1.0) * n[j] * n[k] * n[l];
                }
        q[0] = acc;

        acc = 0.0;
        for (int j = 1; j <= i - 1; ++j)
            for (int k = 0; k <= j - 1; ++k)
                for (int l = 0; l <= I - 1; ++l) {
                    const double mu = bar_value(g, l, j, i);
                    if (!g.cell_contains(k, mu)) continue;
                    acc += k1_at(g.pivot(i), mu, g.pivot(j), ctx, gd, 1.0) * n[i] * n[j] * n[l];
                }
        q[1] = acc;

        acc = 0.0;
        for (int j = 0; j <= i - 2; ++j)
            for (int k = j + 1; k <= i - 1; ++k)
                acc += k1_at(g.pivot(i), g.pivot(j), g.pivot(k), ctx, gd, 1.0) * n[i] * n[j] * n[k];
        q[2] = -acc;

        acc = 0.0;
        for (int j = 0; j <= i - 2; ++j)
            for (int k = j + 1; k <= i - 1; ++k)
                for (int l = 0; l <= I - 1; ++l) {
                    const double eta = hat_value(g, i, j, l);
                    if (!g.cell_contains(k, eta)) continue;
                    acc += k1_at(g.pivot(i), g.pivot(j), eta, ctx, gd, 1.0) * n[i] * n[j] * n[l];
                }
        q[3] = -acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            for (int k = 0; k <= i - 1; ++k)
                for (int l = 0; l <= I - 1; ++l) {
                    if (!g.cell_contains(j, sum_value(g, k, l))) continue;
                    for (int m = 0; m <= I - 1; ++m) {
                        const double w = hat_value(g, l, k, m);
                        if (!g.cell_contains(i, w)) continue;
                        acc += k2_at(w, g.pivot(m), g.pivot(k), ctx, gd) * n[k] * n[l] * n[m];
                    }
                }
        q[4] = acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            for (int k = 0; k <= i - 1; ++k)
                for (int l = 0; l <= I - 1; ++l) {
                    if (!g.cell_contains(j, sum_value(g, k, l))) continue;
                    const double mu = bar_value(g, l, k, i);
                    acc += k2_at(g.pivot(i), mu, g.pivot(k), ctx, gd) * n[i] * n[k] * n[l];
                }
        q[5] = acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            for (int k = 0; k <= i - 1; ++k)
                for (int l = 0; l <= I - 1; ++l) {
                    if (!g.cell_contains(j, sum_value(g, i, l))) continue;
                    acc += k2_at(g.pivot(i), g.pivot(l), g.pivot(k), ctx, gd) * n[i] * n[k] * n[l];
                }
        q[6] = -acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            for (int k = 0; k <= i - 1; ++k)
                for (int l = 0; l <= I - 1; ++l) {
                    if (!g.cell_contains(j, sum_value(g, i, l))) continue;
                    for (int m = 0; m <= I - 1; ++m) {
                        const double eta = hat_value(g, l, i, m);
                        if (!g.cell_contains(k, eta)) continue;
                        acc += k2_at(g.pivot(i), g.pivot(l), eta, ctx, gd) * n[i] * n[l] * n[m];
                    }
                }
        q[7] = -acc;

        acc = 0.0;
        for (int j = i + 2; j <= I - 1; ++j)
            for (int k = i + 1; k <= j - 1; ++k)
                for (int l = 0; l <= I - 1; ++l) {
                    const double w = bar_value(g, l, k, j);
                    if (!g.cell_contains(i, w)) continue;
                    acc += k3_at(w, g.pivot(j), g.pivot(k), ctx, gd) * n[j] * n[k] * n[l];
                }
        q[8] = acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            for (int k = j + 1; k <= I - 1; ++k)
                for (int m = 0; m <= I - 1; ++m) {
                    const double mu = bar_value(g, m, j, i);
                    if (!g.cell_contains(k, mu)) continue;
                    acc += k3_at(g.pivot(i), mu, g.pivot(j), ctx, gd) * n[i] * n[j] * n[m];
                }
        q[9] = acc;

        acc = 0.0;
        for (int j = i + 2; j <= I - 1; ++j)
            for (int k = i + 1; k <= j - 1; ++k)
                acc += k3_at(g.pivot(i), g.pivot(j), g.pivot(k), ctx, gd) * n[i] * n[j] * n[k];
        q[10] = -acc;

        acc = 0.0;
        for (int j = i + 2; j <= I - 1; ++j)
            for (int k = i + 1; k <= j - 1; ++k)
                for (int l = 0; l <= I - 1; ++l) {
                    const double eta = hat_value(g, i, j, l);
                    if (!g.cell_contains(k, eta)) continue;
                    acc += k3_at(g.pivot(i), g.pivot(j), eta, ctx, gd) * n[i] * n[j] * n[l];
                }
        q[11] = -acc;
    }

    if (ctx.params.c2 != 0.0) {
        double acc = 0.0;
        for (int j = 0; j <= I - 1; ++j)
            for (int k = 0; k <= I - 1; ++k) {
                const double s = sum_value(g, j, k);
                if (!g.cell_contains(i, s)) continue;
                acc += k4_at(s, g.pivot(j), ctx, gd) * n[j] * n[k];
            }
        q[12] = acc;

        acc = 0.0;
        for (int j = 0; j <= I - 1; ++j)
            acc += kernel_k5(g.pivot(i), g.pivot(j), ctx.params, ctx.disp) * n[i] * n[j];
        q[13] = -acc;

        acc = 0.0;
        for (int j = 0; j <= i - 1; ++j)
            acc += kernel_k6(g.pivot(i), g.pivot(j), ctx.params, ctx.disp) * n[i] * n[j];
        q[14] = -acc;

        acc = 0.0;
        for (int j = i + 1; j <= I - 1; ++j)
            acc += kernel_k7(g.pivot(i), g.pivot(j), ctx.params, ctx.disp) * n[i] * n[j];
        q[15] = acc;

        acc = 0.0;
        for (int j = 0; j <= I - 1; ++j)
            for (int k = 0; k <= j - 1; ++k) {
                const double d = diff_value(g, j, k);
                if (!g.cell_contains(i, d)) continue;
                acc += k7_at(d, g.pivot(j), ctx, gd) * n[j] * n[k];
            }
        q[16] = acc;
    }

    return q;
}

double rhs_component(int i, const StateVector& n, const OperatorContext& ctx,
                     RhsDiagnostics* diag, const TermMask& mask) {
    return combine_terms(q_terms(i, n, ctx, diag), mask);
}

namespace {

StateVector evaluate(const StateVector& n, const OperatorContext& ctx, RhsDiagnostics* diag,
                     const TermMask& mask, bool brute) {
    const int I = ctx.grid.size();
    if (static_cast<int>(n.size()) != I)
        throw std::invalid_argument("rhs: state length does not match grid");
    StateVector rate(n.size(), 0.0);
    std::atomic<std::uint64_t> skips{0}, nonfinite{0};
    auto work = [&](int i) {
        RhsDiagnostics local;
        const auto q = brute ? q_terms_brute(i, n, ctx, &local) : q_terms(i, n, ctx, &local);
        const double v = combine_terms(q, mask);
        rate[static_cast<std::size_t>(i)] = v;
        if (!std::isfinite(v)) ++nonfinite;
        skips += local.nonpositive_skips;
    };
    parallel_for(I, brute ? 1 : ctx.threads, work);
    if (diag) {
        diag->nonpositive_skips += skips.load();
        diag->nonfinite_components += nonfinite.load();
    }
    return rate;
}

}  // namespace

StateVector rhs(const StateVector& n, const OperatorContext& ctx, RhsDiagnostics* diag,
                const TermMask& mask) {
    return evaluate(n, ctx, diag, mask, false);
}

StateVector brute_force_rhs(const StateVector& n, const OperatorContext& ctx,
                            RhsDiagnostics* diag, const TermMask& mask) {
    return evaluate(n, ctx, diag, mask, true);
}

double positivity_flux_check(const StateVector& n, int i, const OperatorContext& ctx) {
    if (i < 0 || i >= ctx.grid.size())
        throw std::invalid_argument("positivity_flux_check: cell index out of range");
    for (double v : n)
        if (!(v >= 0.0)) throw std::invalid_argument("positivity_flux_check: state must be non-negative");
    if (n[static_cast<std::size_t>(i)] != 0.0)
        throw std::invalid_argument("positivity_flux_check: n[i] must be zero");
    return rhs_component(i, n, ctx);
}

double l1_norm(const StateVector& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double lipschitz_estimate(const OperatorContext& ctx, double ball_radius, int trials,
                          std::uint64_t seed) {
    if (!(ball_radius > 0.0)) throw std::invalid_argument("lipschitz_estimate: ball_radius must be > 0");
    if (trials < 1) throw std::invalid_argument("lipschitz_estimate: trials must be >= 1");
    const int I = ctx.grid.size();
    SplitMix64 rng(seed);
    auto draw = [&]() {
        StateVector v(static_cast<std::size_t>(I));
        double s = 0.0;
        for (auto& x : v) {
            x = rng.next_double();
            s += x;
        }
        // scale to a random L1 norm inside the ball
        const double target = ball_radius * rng.next_double();
        if (s > 0.0)
            for (auto& x : v) x *= target / s;
        return v;
    };
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const StateVector a = draw();
        const StateVector b = draw();
        double dn = 0.0;
        for (std::size_t c = 0; c < a.size(); ++c) dn += std::abs(a[c] - b[c]);
        if (dn == 0.0) continue;
        const StateVector ja = rhs(a, ctx);
        const StateVector jb = rhs(b, ctx);
        double jn = 0.0;
        for (std::size_t c = 0; c < a.size(); ++c) jn += std::abs(ja[c] - jb[c]);
        worst = std::max(worst, jn / dn);
    }
    return worst;
}

}  // namespace wavekin
