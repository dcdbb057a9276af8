#include "zenobat/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "zenobat/analysis.hpp"
#include "zenobat/csv.hpp"

namespace zenobat::cli {

namespace {

constexpr double kPi = std::numbers::pi;

double parse_double(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(where + ": not a number: '" + v + "'");
  }
}

long parse_long(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(where + ": not an integer: '" + v + "'");
  }
}

bool parse_bool(const std::string& v, const std::string& where) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError(where + ": not a boolean: '" + v + "'");
}

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scenario",    "omega0",        "omega1",      "g",
      "gamma",       "mu",            "schedule",    "sample_stride",
      "free_sample_dt", "fit",        "grid_start",  "grid_stop",
      "grid_step",   "refine_factor", "window",      "jobs",
      "n_max",       "out"};
  return keys;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
               const std::string& where) {
  if (key == "scenario")
    cfg.scenario = value;
  else if (key == "omega0")
    cfg.omega0 = parse_double(value, where);
  else if (key == "omega1")
    cfg.omega1 = parse_double(value, where);
  else if (key == "g")
    cfg.g = parse_double(value, where);
  else if (key == "gamma")
    cfg.gamma = parse_double(value, where);
  else if (key == "mu")
    cfg.mu = parse_double(value, where);
  else if (key == "schedule")
    cfg.schedule = value;
  else if (key == "sample_stride")
    cfg.sample_stride = parse_long(value, where);
  else if (key == "free_sample_dt")
    cfg.free_sample_dt = parse_double(value, where);
  else if (key == "fit")
    cfg.fit = parse_bool(value, where);
  else if (key == "grid_start")
    cfg.grid_start = parse_double(value, where);
  else if (key == "grid_stop")
    cfg.grid_stop = parse_double(value, where);
  else if (key == "grid_step")
    cfg.grid_step = parse_double(value, where);
  else if (key == "refine_factor")
    cfg.refine_factor = static_cast<int>(parse_long(value, where));
  else if (key == "window")
    cfg.window = parse_double(value, where);
  else if (key == "jobs")
    cfg.jobs = static_cast<int>(parse_long(value, where));
  else if (key == "n_max")
    cfg.n_max = static_cast<int>(parse_long(value, where));
  else if (key == "out")
    cfg.out = value;
  else
    throw ConfigError(where + ": unknown key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    // validate the key now so the error carries the line number
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    pairs.emplace_back(key, value);
  }
  return pairs;
}

void apply_preset(RunConfig& cfg, const std::string& name) {
  RunConfig c;  // defaults
  c.scenario = name;
  const double g = c.g;
  const double t_fast = kPi / (2.0 * g);              // full charge under dense pulsing
  const double t_bare = kPi / (std::sqrt(2.0) * g);   // full charge at bare resonance
  const double tau_dense = kPi / (1000.0 * g);
  // schedule strings round-trip exactly so pulse counts survive parsing
  const auto exact = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  const auto sched_free = [&](double d) { return "free:" + exact(d); };
  const auto sched_pulsed = [&](double d, double tau) {
    return "pulsed:" + exact(d) + ":" + exact(tau);
  };

  if (name == "fig2a") {
    c.omega1 = std::sqrt(2.0);
    c.schedule = sched_free(2.0 * t_bare);
  } else if (name == "fig2a_pulsed") {
    c.omega1 = std::sqrt(2.0);
    c.schedule = sched_pulsed(2.0 * t_bare, tau_dense);
  } else if (name == "fig2b") {
    c.schedule = sched_pulsed(t_fast, tau_dense);
  } else if (name == "fig2b_free") {
    c.schedule = sched_free(t_fast);
  } else if (name == "fig2c") {
    c.schedule = sched_free(0.5 * t_fast) + "," + sched_pulsed(t_fast, tau_dense) + "," +
                 sched_free(0.5 * t_fast);
  } else if (name == "fig2d") {
    c.schedule = sched_pulsed(1.5 * std::sqrt(2.0) * kPi / g, kPi / (100.0 * g));
  } else if (name == "figS1") {
    c.schedule = sched_pulsed(2.0 * t_fast, tau_dense);
    c.fit = true;
  } else if (name == "figS2") {
    c.schedule = sched_pulsed(300.0 * t_fast, 84.0 * tau_dense);
    c.fit = true;
  } else if (name == "fig3") {
    // scan defaults already encode the grid
  } else if (name == "figS3") {
    c.gamma = 0.7;
  } else if (name == "figS4") {
    c.mu = 2.0;
  } else {
    throw ConfigError("unknown scenario '" + name + "'");
  }
  cfg = c;
}

std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig& cfg) {
  const ModelParams p = make_params(cfg);
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("scenario", cfg.scenario);
  kv.emplace_back("omega0", format_sig(cfg.omega0));
  kv.emplace_back("omega1", format_sig(p.omega1()));
  kv.emplace_back("g", format_sig(cfg.g));
  kv.emplace_back("gamma", format_sig(cfg.gamma));
  kv.emplace_back("mu", format_sig(cfg.mu));
  kv.emplace_back("schedule", cfg.schedule);
  kv.emplace_back("sample_stride", std::to_string(cfg.sample_stride));
  kv.emplace_back("free_sample_dt",
                  format_sig(cfg.free_sample_dt > 0.0 ? cfg.free_sample_dt
                                                      : kPi / (200.0 * cfg.g)));
  kv.emplace_back("fit", cfg.fit ? "true" : "false");
  kv.emplace_back("grid_start", format_sig(cfg.grid_start));
  kv.emplace_back("grid_stop", format_sig(cfg.grid_stop));
  kv.emplace_back("grid_step", format_sig(cfg.grid_step));
  kv.emplace_back("refine_factor", std::to_string(cfg.refine_factor));
  kv.emplace_back("window",
                  format_sig(cfg.window > 0.0 ? cfg.window : default_scan_window(p)));
  // jobs is a performance knob with no effect on results, so it stays out of
  // the echo and CSV bytes are identical across parallel degrees
  kv.emplace_back("n_max", std::to_string(cfg.n_max));
  return kv;
}

ModelParams make_params(const RunConfig& cfg) {
  try {
    return ModelParams(cfg.omega0, cfg.g, cfg.gamma, cfg.mu, cfg.omega1);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  }
}

PulseSchedule parse_schedule(const std::string& text) {
  if (trim(text).empty()) throw ConfigError("schedule is empty");
  std::vector<Phase> phases;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("schedule: empty phase entry");
    std::vector<std::string> parts;
    std::stringstream ps(item);
    std::string f;
    while (std::getline(ps, f, ':')) parts.push_back(trim(f));
    const std::string where = "schedule phase '" + item + "'";
    if (parts[0] == "free") {
      if (parts.size() != 2) throw ConfigError(where + ": expected free:DURATION");
      phases.push_back(Phase::free_evolution(parse_double(parts[1], where)));
    } else if (parts[0] == "pulsed") {
      if (parts.size() != 3) throw ConfigError(where + ": expected pulsed:DURATION:TAU");
      phases.push_back(
          Phase::pulsed(parse_double(parts[1], where), parse_double(parts[2], where)));
    } else {
      throw ConfigError(where + ": kind must be 'free' or 'pulsed'");
    }
  }
  try {
    return PulseSchedule(std::move(phases));
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid schedule: ") + e.what());
  }
}

}  // namespace zenobat::cli
