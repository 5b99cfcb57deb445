#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wavekin/simulation.hpp"

namespace wavekin {

// Configuration errors carry the offending key and line for diagnostics.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& key, int line, const std::string& what)
        : std::runtime_error("config: key '" + key + "' (line " + std::to_string(line) +
                             "): " + what),
          key_(key),
          line_(line) {}
    const std::string& key() const { return key_; }
    int line() const { return line_; }

  private:
    std::string key_;
    int line_;
};

enum class SweepAxis { none, c1c2, sigma_gamma };

// A fully resolved experiment description: simulation setup plus
// orchestration knobs.
struct RunManifest {
    SimConfig sim;
    SweepAxis axis = SweepAxis::none;
    std::vector<std::pair<double, double>> sweep_tuples;  // (c1,c2) or (sigma,gamma)
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int threads = 1;
    std::vector<int> levels{16, 32, 64};  // converge subcommand
    int oracle_trials = 100;
    int oracle_max_cells = 12;
    std::string ic_file;  // tabulated density for ic = custom
};

// Parse a flat key = value document ('#' comments). Unknown keys, malformed
// values, and out-of-range values are errors. Absent keys take the
// documented defaults (a Test-I-like setup).
RunManifest parse_config(const std::string& text);

RunManifest load_config_file(const std::string& path);

}  // namespace wavekin
