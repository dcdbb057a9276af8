// zenobat: pulsed-control quantum battery simulator.
//
// Subcommands: simulate (time series CSV), scan (tau sweep CSV),
// peaks (predicted singular intervals), verify (self checks).

#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <numbers>

#include "zenobat/analysis.hpp"
#include "zenobat/csv.hpp"
#include "zenobat/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

using zenobat::cli::RunConfig;

struct Cli {
  std::string config_path;
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> overrides;  // in flag order
};

// register every config key as a --key VALUE override on the subcommand
void add_config_options(CLI::App* cmd, Cli& cli) {
  cmd->add_option("--config", cli.config_path, "key=value config file");
  cmd->add_option("--scenario", cli.scenario, "named preset (fig2a..fig2d, fig3, figS1..figS4)");
  for (const std::string& key : zenobat::cli::config_keys()) {
    if (key == "scenario") continue;
    if (key == "fit") {
      cmd->add_flag_function(
          "--fit", [&cli](int64_t) { cli.overrides.emplace_back("fit", "true"); },
          "print fitted (A, T) summary");
      continue;
    }
    cmd->add_option_function<std::string>(
        "--" + key,
        [&cli, key](const std::string& v) { cli.overrides.emplace_back(key, v); },
        "override config key " + key);
  }
}

RunConfig resolve_config(const Cli& cli) {
  std::vector<std::pair<std::string, std::string>> file_pairs;
  if (!cli.config_path.empty()) file_pairs = zenobat::cli::read_config_file(cli.config_path);

  std::string scenario = cli.scenario;
  if (scenario.empty())
    for (const auto& [k, v] : file_pairs)
      if (k == "scenario") scenario = v;

  RunConfig cfg;
  if (!scenario.empty()) zenobat::cli::apply_preset(cfg, scenario);
  for (const auto& [k, v] : file_pairs)
    if (k != "scenario") zenobat::cli::apply_key(cfg, k, v, cli.config_path);
  for (const auto& [k, v] : cli.overrides) zenobat::cli::apply_key(cfg, k, v, "--" + k);
  return cfg;
}

// writes to cfg.out, or stdout when no path is configured
void emit(const RunConfig& cfg, const std::function<void(std::ostream&)>& writer) {
  if (cfg.out.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw zenobat::ConfigError("cannot open output file: " + cfg.out);
  writer(out);
}

int cmd_simulate(const Cli& cli) {
  const RunConfig cfg = resolve_config(cli);
  const zenobat::ModelParams params = zenobat::cli::make_params(cfg);
  const zenobat::PulseSchedule schedule = zenobat::cli::parse_schedule(cfg.schedule);
  zenobat::Sampling sampling;
  sampling.pulse_stride = cfg.sample_stride;
  sampling.free_dt = cfg.free_sample_dt;
  const zenobat::ScheduleResult res = zenobat::run_schedule(params, schedule, sampling);
  emit(cfg, [&](std::ostream& os) {
    zenobat::cli::write_series_csv(os, cfg, params, res.series);
  });
  if (cfg.fit) {
    const zenobat::FitResult f = zenobat::fit_charging_curve(res.series, params);
    std::cerr << "fit: A=" << zenobat::cli::format_sig(f.a)
              << " T=" << zenobat::cli::format_sig(f.t_charge)
              << " residual=" << zenobat::cli::format_sig(f.residual)
              << " resolved=" << (f.resolved ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int cmd_scan(const Cli& cli) {
  const RunConfig cfg = resolve_config(cli);
  const zenobat::ModelParams params = zenobat::cli::make_params(cfg);
  if (cfg.grid_stop < cfg.grid_start)
    throw zenobat::ConfigError("empty grid: grid_stop < grid_start");
  const std::vector<double> grid = zenobat::make_scan_grid(
      params, cfg.grid_start, cfg.grid_stop, cfg.grid_step, cfg.refine_factor);
  const double window = cfg.window > 0.0 ? cfg.window : zenobat::default_scan_window(params);
  const zenobat::ScanResult scan = zenobat::scan_tau(params, grid, window, cfg.jobs);
  emit(cfg, [&](std::ostream& os) { zenobat::cli::write_scan_csv(os, cfg, params, scan); });
  if (!std::isnan(scan.valley_slope))
    std::cerr << "valley slope T/tau = " << zenobat::cli::format_sig(scan.valley_slope)
              << " (residual " << zenobat::cli::format_sig(scan.valley_residual) << ", "
              << scan.valley_indices.size() << " valleys)\n";
  return kExitOk;
}

int cmd_peaks(const Cli& cli) {
  const RunConfig cfg = resolve_config(cli);
  const zenobat::ModelParams params = zenobat::cli::make_params(cfg);
  const std::vector<double> peaks = zenobat::predict_peaks(params, cfg.n_max);
  if (!cfg.out.empty()) {
    emit(cfg, [&](std::ostream& os) { zenobat::cli::write_peaks_csv(os, cfg, params, peaks); });
    return kExitOk;
  }
  std::cout << "  n          tau    (1000/pi) g tau\n";
  for (size_t i = 0; i < peaks.size(); ++i) {
    std::printf("%3zu %12.6f %15.6f\n", i + 1, peaks[i],
                zenobat::tau_scaled(params, peaks[i]));
  }
  return kExitOk;
}

int cmd_verify(const std::string& level_name, bool mutate) {
  zenobat::cli::VerifyLevel level;
  if (level_name == "fast")
    level = zenobat::cli::VerifyLevel::fast;
  else if (level_name == "full")
    level = zenobat::cli::VerifyLevel::full;
  else
    throw zenobat::ConfigError("verify level must be 'fast' or 'full'");

  char exe[4096] = {0};
  const ssize_t len = ::readlink("/proc/self/exe", exe, sizeof(exe) - 1);
  const std::string exe_path = len > 0 ? std::string(exe, static_cast<size_t>(len)) : "";

  const auto results = zenobat::cli::run_verify_checks(level, mutate, exe_path);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("%s  %-32s %9.1f ms%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.millis,
                r.detail.empty() ? "" : "  ", r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modulator-assisted quantum battery simulator"};
  app.require_subcommand(1);

  Cli sim_cli, scan_cli, peaks_cli;
  CLI::App* sim = app.add_subcommand("simulate", "run a pulse schedule, emit t/E_c/E_b CSV");
  add_config_options(sim, sim_cli);
  CLI::App* scan = app.add_subcommand("scan", "sweep the inter-pulse interval, emit A/T CSV");
  add_config_options(scan, scan_cli);
  CLI::App* peaks = app.add_subcommand("peaks", "print predicted singular intervals tau_n");
  add_config_options(peaks, peaks_cli);

  std::string verify_level = "fast";
  bool verify_mutate = false;
  CLI::App* verify = app.add_subcommand("verify", "run self checks (fast|full)");
  verify->add_option("level", verify_level, "fast or full")->required();
  verify->add_flag("--mutate", verify_mutate,
                   "perturb a model constant to prove the checks can fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_cli);
    if (scan->parsed()) return cmd_scan(scan_cli);
    if (peaks->parsed()) return cmd_peaks(peaks_cli);
    if (verify->parsed()) return cmd_verify(verify_level, verify_mutate);
  } catch (const zenobat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const zenobat::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const zenobat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
