#pragma once

#include <string>

#include "wavekin/config.hpp"

namespace wavekin {

// Experiment commands behind the CLI subcommands. Each returns a process
// exit status (0 on success) and writes CSV files into manifest.out_dir.
int cmd_run(const RunManifest& manifest);
int cmd_sweep(const RunManifest& manifest);
int cmd_converge(const RunManifest& manifest);
int cmd_oracle(const RunManifest& manifest);

// timeseries.csv body for a finished run (also used by the determinism
// checks, which compare bytes across repeated runs).
std::string timeseries_csv(const ObservableSeries& series);

}  // namespace wavekin
