#include "wavekin/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "wavekin/consistency.hpp"
#include "wavekin/csv.hpp"
#include "wavekin/parallel.hpp"
#include "wavekin/prng.hpp"

namespace wavekin {
namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
}

std::string density_csv(const Grid& g, const StateVector& n) {
    std::ostringstream out;
    out << "omega,f,N\n";
    for (int i = 0; i < g.size(); ++i) {
        const double ni = n[static_cast<std::size_t>(i)];
        out << format_g17(g.pivot(i)) << ',' << format_g17(ni / g.width(i)) << ','
            << format_g17(ni) << '\n';
    }
    return out.str();
}

std::function<double(double)> tabulated_density(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ic_file: " + path);
    std::vector<std::pair<double, double>> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double w, f;
        if (ls >> w >> f) pts.emplace_back(w, f);
    }
    if (pts.size() < 2) throw std::runtime_error("ic_file needs at least two (omega, f) rows");
    std::sort(pts.begin(), pts.end());
    return [pts](double w) {
        if (w <= pts.front().first) return pts.front().second;
        if (w >= pts.back().first) return pts.back().second;
        auto hi = std::upper_bound(pts.begin(), pts.end(), std::make_pair(w, 0.0),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        auto lo = hi - 1;
        const double t = (w - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    };
}

SimConfig resolve_sim(const RunManifest& m) {
    SimConfig sim = m.sim;
    if (sim.ic == IcKind::custom) {
        if (m.ic_file.empty())
            throw std::runtime_error("ic = custom requires ic_file = <path>");
        sim.custom_ic = tabulated_density(m.ic_file);
    }
    return sim;
}

struct RunOutcome {
    RunResult result;
    int status = 0;
};

RunOutcome run_to_files(const SimConfig& sim, const fs::path& dir, const std::string& suffix) {
    RunOutcome out{run(sim), 0};
    fs::create_directories(dir);
    write_file(dir / ("timeseries" + suffix + ".csv"), timeseries_csv(out.result.series));
    for (const auto& [t, n] : out.result.snapshots)
        write_file(dir / ("density_" + format_shortest(t) + suffix + ".csv"),
                   density_csv(out.result.grid, n));
    if (!out.result.warning.empty())
        std::cerr << "warning: " << out.result.warning << (suffix.empty() ? "" : " [" + suffix + "]")
                  << "\n";
    if (out.result.aborted_nonfinite) {
        std::cerr << "error: state became non-finite; aborted early"
                  << (suffix.empty() ? "" : " [" + suffix + "]") << "\n";
        out.status = 1;
    }
    return out;
}

}  // namespace

std::string timeseries_csv(const ObservableSeries& s) {
    std::ostringstream out;
    out << "t,mass,energy,m3,negativity_events\n";
    for (std::size_t r = 0; r < s.times.size(); ++r) {
        out << format_g17(s.times[r]) << ',' << format_g17(s.mass[r]) << ','
            << format_g17(s.energy[r]) << ',' << format_g17(s.m3[r]) << ','
            << s.negativity_events[r] << '\n';
    }
    return out.str();
}

int cmd_run(const RunManifest& manifest) {
    return run_to_files(resolve_sim(manifest), manifest.out_dir, "").status;
}

int cmd_sweep(const RunManifest& manifest) {
    if (manifest.axis == SweepAxis::none)
        throw std::runtime_error("sweep: config must set sweep = c1c2 or sweep = sigma_gamma");
    const SimConfig base = resolve_sim(manifest);
    const auto& tuples = manifest.sweep_tuples;
    const bool c1c2 = manifest.axis == SweepAxis::c1c2;

    struct Member {
        std::string slug;
        double e0 = 0.0, et = 0.0, m30 = 0.0, m3t = 0.0;
        bool constant_energy = false;
        std::string error;
        bool failed = false;
    };
    std::vector<Member> members(tuples.size());

    parallel_for(static_cast<int>(tuples.size()), manifest.threads, [&](int t) {
        const auto [a, b] = tuples[static_cast<std::size_t>(t)];
        SimConfig sim = base;
        sim.threads = 1;  // one worker per configuration
        std::string slug;
        if (c1c2) {
            sim.params.c1 = a;
            sim.params.c2 = b;
            slug = "c1_" + format_slug_value(a) + "_c2_" + format_slug_value(b);
        } else {
            sim.params.sigma = a;
            sim.params.gamma = b;
            slug = "sigma_" + format_slug_value(a) + "_gamma_" + format_slug_value(b);
        }
        auto& mem = members[static_cast<std::size_t>(t)];
        mem.slug = slug;
        try {
            const RunOutcome outcome = run_to_files(sim, manifest.out_dir, "_" + slug);
            mem.failed = outcome.status != 0;
            const auto& s = outcome.result.series;
            mem.e0 = s.energy.front();
            mem.et = s.energy.back();
            mem.m30 = s.m3.front();
            mem.m3t = s.m3.back();
            mem.constant_energy = std::abs(mem.et - mem.e0) <= 1e-15 * std::abs(mem.e0);
        } catch (const std::exception& e) {
            mem.failed = true;
            mem.error = e.what();
        }
    });

    std::ostringstream summary;
    summary << "tuple,E0,ET,M3_0,M3_T,constant_energy\n";
    bool any_failed = false;
    for (const auto& mem : members) {
        if (mem.failed) {
            any_failed = true;
            continue;
        }
        summary << mem.slug << ',' << format_g17(mem.e0) << ',' << format_g17(mem.et) << ','
                << format_g17(mem.m30) << ',' << format_g17(mem.m3t) << ','
                << (mem.constant_energy ? 1 : 0) << '\n';
    }
    fs::create_directories(manifest.out_dir);
    write_file(fs::path(manifest.out_dir) / "summary.csv", summary.str());

    if (any_failed) {
        std::cerr << "sweep: failed tuples:";
        for (const auto& mem : members)
            if (mem.failed) std::cerr << ' ' << mem.slug << (mem.error.empty() ? "" : " (" + mem.error + ")");
        std::cerr << "\n";
        return 1;
    }
    return 0;
}

int cmd_converge(const RunManifest& manifest) {
    if (manifest.levels.size() < 2)
        throw std::runtime_error("converge: need at least 2 levels");
    SimConfig sim = resolve_sim(manifest);
    sim.threads = manifest.threads;
    const auto table = consistency_study(sim, manifest.levels);

    std::ostringstream out;
    out << "delta_omega,eps_l1,observed_order\n";
    for (std::size_t r = 0; r < table.size(); ++r) {
        out << format_g17(table[r].delta_omega) << ',' << format_g17(table[r].eps_l1) << ',';
        if (r > 0 && table[r - 1].eps_l1 > 0.0 && table[r].eps_l1 > 0.0) {
            const double order = std::log2(table[r - 1].eps_l1 / table[r].eps_l1) /
                                 std::log2(table[r - 1].delta_omega / table[r].delta_omega);
            out << format_g17(order);
        }
        out << '\n';
    }
    fs::create_directories(manifest.out_dir);
    write_file(fs::path(manifest.out_dir) / "converge.csv", out.str());
    std::cout << out.str();
    return 0;
}

int cmd_oracle(const RunManifest& manifest) {
    if (manifest.oracle_max_cells > 20)
        throw std::runtime_error("oracle: max_cells must be <= 20");
    SplitMix64 rng(manifest.seed);
    double worst = 0.0;
    std::cout << "cells,trials,max_rel_dev\n";
    for (int cells = 4; cells <= manifest.oracle_max_cells; cells += 4) {
        Grid g = Grid::uniform(manifest.sim.omega_min, manifest.sim.omega_max, cells);
        OperatorContext ctx(std::move(g), manifest.sim.params, manifest.sim.disp);
        double level_worst = 0.0;
        for (int t = 0; t < manifest.oracle_trials; ++t) {
            StateVector n(static_cast<std::size_t>(cells));
            for (auto& v : n) v = rng.next_double();
            const StateVector a = rhs(n, ctx);
            const StateVector b = brute_force_rhs(n, ctx);
            for (std::size_t c = 0; c < n.size(); ++c) {
                const double denom = std::max(std::abs(a[c]), std::abs(b[c]));
                if (denom > 0.0) level_worst = std::max(level_worst, std::abs(a[c] - b[c]) / denom);
            }
        }
        std::cout << cells << ',' << manifest.oracle_trials << ',' << format_g17(level_worst)
                  << '\n';
        worst = std::max(worst, level_worst);
    }
    const bool pass = worst < 1e-12;
    std::cout << (pass ? "PASS" : "FAIL") << " max relative deviation " << format_g17(worst)
              << " (threshold 1e-12)\n";
    return pass ? 0 : 1;
}

}  // namespace wavekin
