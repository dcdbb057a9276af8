#pragma once

// Run configuration: flat key=value schema shared by config files, command
// line overrides and scenario presets.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zenobat/engine.hpp"

namespace zenobat::cli {

struct RunConfig {
  std::string scenario;

  // physics (frequencies in units of omega0, times in 1/omega0)
  double omega0 = 1.0;
  std::optional<double> omega1;  // empty: resonant default mu*gamma*omega0/sqrt(1+gamma^2)
  double g = 0.01;
  double gamma = 1.0;
  double mu = 1.0;

  // simulate
  std::string schedule;       // "free:DURATION" / "pulsed:DURATION:TAU", comma separated
  long sample_stride = 1;     // pulsed phases: record every N-th pulse
  double free_sample_dt = 0;  // free phases: sample interval; 0 -> pi/(200 g)
  bool fit = false;           // print fitted (A, T) summary

  // scan (grid in scaled units (1000/pi) g tau)
  double grid_start = 0.5;
  double grid_stop = 50.0;
  double grid_step = 0.25;
  int refine_factor = 5;
  double window = 0.0;  // 0 -> 300 pi/(2g)
  int jobs = 0;         // 0 -> hardware concurrency

  // peaks
  int n_max = 3;

  std::string out;  // CSV path; empty -> stdout
};

/// Names of every accepted key, in canonical echo order.
const std::vector<std::string>& config_keys();

/// Applies one key=value pair; throws ConfigError for unknown keys or
/// unparsable values. `where` is prefixed to error messages.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
               const std::string& where);

/// Ordered (key, value) pairs read from a key=value file ('#' comments).
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Loads a named scenario preset; throws ConfigError for unknown names.
void apply_preset(RunConfig& cfg, const std::string& name);

/// The full effective configuration as (key, value) pairs, with derived
/// defaults (omega1, window, free_sample_dt) resolved to their numeric
/// values so the echo is re-runnable.
std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig& cfg);

ModelParams make_params(const RunConfig& cfg);

/// Parses the schedule DSL; throws ConfigError on malformed phases.
PulseSchedule parse_schedule(const std::string& text);

}  // namespace zenobat::cli
