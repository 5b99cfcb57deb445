#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wavekin/cli.hpp"

namespace {

int env_threads_fallback() {
    if (const char* env = std::getenv("WAVEKIN_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (...) {
        }
        std::cerr << "warning: ignoring invalid WAVEKIN_THREADS='" << env << "'\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-volume solver for the mixed 3- and 4-wave kinetic equation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    bool deterministic = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key = value configuration file");
        cmd->add_option("--out", out_dir, "output directory (default: from config or '.')");
        cmd->add_option("--seed", seed, "PRNG seed (SplitMix64)")->each([&](const std::string&) {
            seed_set = true;
        });
        cmd->add_option("--threads", threads, "worker threads (fallback: WAVEKIN_THREADS)");
        cmd->add_flag("--deterministic", deterministic,
                      "force deterministic ascending summation (on by default)");
    };

    auto* run_cmd = app.add_subcommand("run", "single simulation, writes timeseries + densities");
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep, one timeseries per tuple");
    auto* converge_cmd = app.add_subcommand("converge", "grid-refinement consistency table");
    auto* oracle_cmd = app.add_subcommand("oracle", "cross-check fast operator vs reference");
    int trials = 0, max_cells = 0;
    oracle_cmd->add_option("--trials", trials, "random states per grid size");
    oracle_cmd->add_option("--max-cells", max_cells, "largest grid for the reference (<= 20)");
    std::string levels_arg;
    converge_cmd->add_option("--levels", levels_arg, "comma-separated cell counts, e.g. 16,32,64");
    for (auto* cmd : {run_cmd, sweep_cmd, converge_cmd, oracle_cmd}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        wavekin::RunManifest manifest =
            config_path.empty() ? wavekin::parse_config("") : wavekin::load_config_file(config_path);
        if (!out_dir.empty()) manifest.out_dir = out_dir;
        if (seed_set) manifest.seed = seed;
        if (threads >= 1) manifest.threads = threads;
        else if (const int env = env_threads_fallback()) manifest.threads = env;
        manifest.sim.threads = manifest.threads;
        if (deterministic) manifest.sim.deterministic = true;
        if (trials >= 1) manifest.oracle_trials = trials;
        if (max_cells >= 2) manifest.oracle_max_cells = max_cells;
        if (!levels_arg.empty()) {
            manifest.levels.clear();
            std::size_t pos = 0;
            while (pos < levels_arg.size()) {
                const std::size_t comma = levels_arg.find(',', pos);
                const std::string tok = levels_arg.substr(
                    pos, comma == std::string::npos ? std::string::npos : comma - pos);
                if (!tok.empty()) manifest.levels.push_back(std::stoi(tok));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        }

        if (run_cmd->parsed()) return wavekin::cmd_run(manifest);
        if (sweep_cmd->parsed()) return wavekin::cmd_sweep(manifest);
        if (converge_cmd->parsed()) return wavekin::cmd_converge(manifest);
        if (oracle_cmd->parsed()) return wavekin::cmd_oracle(manifest);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
