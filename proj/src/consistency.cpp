#include "wavekin/consistency.hpp"

#include <cmath>
#include <stdexcept>

#include "wavekin/parallel.hpp"

namespace wavekin {
namespace {

// Simpson panel counts. The outer rule subdivides each mesh cell 32x; the
// inner rules are sized so the reference error sits well below the scheme
// residual at every tested level.
constexpr int OUTER_PANELS = 16;  // 32 sub-intervals per cell
constexpr int INNER_PANELS = 96;
constexpr int LINE_PANELS = 256;

template <class F>
double simpson(F&& f, double a, double b, int panels) {
    const double h = (b - a) / (2 * panels);
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double x0 = a + 2 * p * h;
        acc += f(x0) + 4.0 * f(x0 + h) + f(x0 + 2.0 * h);
    }
    return acc * h / 3.0;
}

struct FluxIntegrand {
    const KernelParams& p;
    const DispersionRelation& d;
    const std::function<double(double)>& f;
    double R;

    double density(double x) const { return x > 0.0 ? f(x) : 0.0; }

    // four-wave bracket at (w, mu, eta), nu = w + mu - eta
    double bracket(double w, double mu, double eta, double nu) const {
        const double fw = density(w), fm = density(mu), fe = density(eta), fn = density(nu);
        return fe * fn * (fm + fw) - fw * fm * (fe + fn);
    }

    double g1(double w) const {
        return simpson(
            [&](double u) {
                const double mu = w * u;
                const double span = w - mu;
                if (!(mu > 0.0) || !(span > 0.0)) return 0.0;
                const double inner = simpson(
                    [&](double v) {
                        const double eta = mu + span * v;
                        const double nu = w + mu - eta;
                        if (!(eta > 0.0) || !(nu > 0.0)) return 0.0;
                        return kernel_k1(w, mu, eta, p, d) * bracket(w, mu, eta, nu);
                    },
                    0.0, 1.0, INNER_PANELS);
                return w * span * inner;
            },
            0.0, 1.0, INNER_PANELS);
    }

    double g2(double w) const {
        const double span = R - w;
        if (!(span > 0.0)) return 0.0;
        return simpson(
            [&](double u) {
                const double mt = w + span * u;  // the summed frequency, in (w, R)
                const double mu = mt - w;
                if (!(mu > 0.0)) return 0.0;
                const double inner = simpson(
                    [&](double v) {
                        const double eta = w * v;
                        if (!(eta > 0.0)) return 0.0;
                        const double nu = mt - eta;  // equals w + mu - eta
                        if (!(nu > 0.0)) return 0.0;
                        const double fm = density(mu), fw = density(w), fe = density(eta),
                                     fn = density(nu);
                        const double br = fe * fn * (fm + fw) - fw * fm * (fe + fn);
                        return kernel_k2(w, mu, eta, p, d) * br;
                    },
                    0.0, 1.0, INNER_PANELS);
                return span * w * inner;
            },
            0.0, 1.0, INNER_PANELS);
    }

    double g3(double w) const {
        const double span = R - w;
        if (!(span > 0.0)) return 0.0;
        return simpson(
            [&](double u) {
                const double mu = w + span * u;
                const double espan = mu - w;
                if (!(espan > 0.0)) return 0.0;
                const double inner = simpson(
                    [&](double v) {
                        const double eta = w + espan * v;
                        const double nu = w + mu - eta;
                        if (!(eta > 0.0) || !(nu > 0.0)) return 0.0;
                        return kernel_k3(w, mu, eta, p, d) * bracket(w, mu, eta, nu);
                    },
                    0.0, 1.0, INNER_PANELS);
                return span * espan * inner;
            },
            0.0, 1.0, INNER_PANELS);
    }

    double g4(double w) const {
        return simpson(
            [&](double u) {
                const double mu = w * u;
                const double rem = w - mu;
                if (!(mu > 0.0) || !(rem > 0.0)) return 0.0;
                return w * kernel_k4(w, mu, p, d) * density(mu) * density(rem);
            },
            0.0, 1.0, LINE_PANELS);
    }

    double g5(double w) const {
        const double fw = density(w);
        return -simpson(
            [&](double mu) {
                if (!(mu > 0.0)) return 0.0;
                return kernel_k5(w, mu, p, d) * fw * density(mu);
            },
            0.0, R, LINE_PANELS);
    }

    double g6(double w) const {
        const double fw = density(w);
        return -simpson(
            [&](double u) {
                const double mu = w * u;
                if (!(mu > 0.0) || !(mu < w)) return 0.0;
                return w * kernel_k6(w, mu, p, d) * fw * density(mu);
            },
            0.0, 1.0, LINE_PANELS);
    }

    double g7(double w) const {
        const double span = R - w;
        if (!(span > 0.0)) return 0.0;
        const double fw = density(w);
        return simpson(
            [&](double u) {
                const double mu = w + span * u;
                if (!(mu > w)) return 0.0;
                return span * kernel_k7(w, mu, p, d) * fw * density(mu);
            },
            0.0, 1.0, LINE_PANELS);
    }

    double g8(double w) const {
        const double span = R - w;
        if (!(span > 0.0)) return 0.0;
        return simpson(
            [&](double u) {
                const double mu = w + span * u;
                if (!(mu > w)) return 0.0;
                return span * kernel_k7(w, mu, p, d) * density(mu) * density(mu - w);
            },
            0.0, 1.0, LINE_PANELS);
    }

    double total(double w, bool four_wave, bool three_wave) const {
        double s = 0.0;
        if (four_wave) s += g1(w) + g2(w) + g3(w);
        if (three_wave) s += g4(w) + g5(w) + g6(w) + g7(w) + g8(w);
        return s;
    }
};

}  // namespace

std::vector<double> exact_flux(const Grid& g, const KernelParams& p, const DispersionRelation& d,
                               const std::function<double(double)>& f, int threads) {
    const FluxIntegrand fi{p, d, f, g.R()};
    const bool four_wave = p.c1 != 0.0;
    const bool three_wave = p.c2 != 0.0;
    std::vector<double> out(static_cast<std::size_t>(g.size()), 0.0);
    parallel_for(g.size(), threads, [&](int i) {
        out[static_cast<std::size_t>(i)] =
            simpson([&](double w) { return fi.total(w, four_wave, three_wave); }, g.edge(i),
                    g.edge(i + 1), OUTER_PANELS);
    });
    return out;
}

std::vector<ConsistencyLevel> consistency_study(const SimConfig& cfg,
                                                const std::vector<int>& levels) {
    cfg.validate();
    const auto f = cfg.ic == IcKind::custom ? cfg.custom_ic : ic_function(cfg.ic);
    std::vector<ConsistencyLevel> out;
    for (int I : levels) {
        Grid grid = Grid::uniform(cfg.omega_min, cfg.omega_max, I);
        OperatorContext ctx(grid, cfg.params, cfg.disp);
        ctx.threads = cfg.threads;
        const StateVector n = project_initial_condition(f, ctx.grid);
        const StateVector j = rhs(n, ctx);
        const std::vector<double> flux = exact_flux(ctx.grid, cfg.params, cfg.disp, f, cfg.threads);
        double eps = 0.0;
        for (std::size_t c = 0; c < j.size(); ++c) eps += std::abs(flux[c] - j[c]);
        out.push_back({I, (cfg.omega_max - cfg.omega_min) / I, eps});
    }
    return out;
}

}  // namespace wavekin
