// Copyright 2026 The cqedlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cqed/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "cqed/errors.hpp"
#include "cqed/params.hpp"

namespace cqed {

const std::map<std::string, std::string>& config_defaults() {
  static const std::map<std::string, std::string> defaults = {
      {"g_mhz_over_2pi", "16"},
      {"kappa_mhz_over_2pi", "3.8"},
      {"kappa_loss_mhz_over_2pi", "0"},
      {"gamma_mhz_over_2pi", "2.6"},
      {"gamma_a_share", "0.5"},
      {"delta_mhz_over_2pi", "10"},
      {"delta2_mhz_over_2pi", "0"},
      {"fock_cutoff", "4"},
      {"calibrate", "true"},
      {"calibration_mode", "transmitted"},
      {"n_bar_in", "1.1"},
      {"n_bar_cavity", "0.68"},
      {"lambda2_n_bar_in", "3.0"},
      {"omega_max_over_gamma", "8"},
      {"omega_phase_rad", "0"},
      {"edge_time_ns", "100"},
      {"lambda_width_ns", "150"},
      {"lambda2_width_ns", "150"},
      {"lambda2_offset_ns", "250"},
      {"delta_t_ns", "1000"},
      {"t1_ns", "0"},
      {"readout_window_ns", "1000"},
      {"emission_tail_ns", "1000"},
      {"t1_first_ns", "-2100"},
      {"t1_last_ns", "2100"},
      {"t1_points", "15"},
      {"theta_points", "16"},
      {"window_ns", "200"},
      {"initial_state", "a"},
      {"polarization_modes", "2"},
      {"n_traj", "1000"},
      {"seed", "1"},
      {"workers", "1"},
      {"output_dir", "cqed_out"},
      {"sample_dt_ns", "1"},
      {"atol", "1e-10"},
      {"rtol", "1e-8"},
  };
  return defaults;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_assignment(const std::string& line,
                                                     const std::string& origin) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw ConfigError(trim(line), "expected 'key = value' in " + origin);
  }
  std::string key = trim(line.substr(0, eq));
  std::string value = trim(line.substr(eq + 1));
  if (key.empty()) throw ConfigError("", "empty key in " + origin);
  return {key, value};
}

void merge(std::map<std::string, std::string>& into,
           const std::map<std::string, std::string>& from) {
  for (const auto& [key, value] : from) {
    if (!config_defaults().count(key)) throw ConfigError(key, "unknown key");
    into[key] = value;
  }
}

class Reader {
 public:
  explicit Reader(const std::map<std::string, std::string>& values) : values_(values) {}

  double real(const std::string& key, double lo = -std::numeric_limits<double>::infinity(),
              bool lo_open = false) const {
    const std::string& text = values_.at(key);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
      throw ConfigError(key, "expected a finite number, got '" + text + "'");
    }
    if (v < lo || (lo_open && v == lo)) {
      throw ConfigError(key, "value " + text + " out of range (must be " +
                                 (lo_open ? "> " : ">= ") + format(lo) + ")");
    }
    return v;
  }

  long long integer(const std::string& key, long long lo, long long hi) const {
    const std::string& text = values_.at(key);
    long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw ConfigError(key, "expected an integer, got '" + text + "'");
    }
    if (v < lo || v > hi) {
      throw ConfigError(key, "value " + text + " out of range [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
    }
    return v;
  }

  std::uint64_t unsigned64(const std::string& key) const {
    const std::string& text = values_.at(key);
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
    }
    return v;
  }

  bool boolean(const std::string& key) const {
    const std::string& text = values_.at(key);
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(key, "expected true or false, got '" + text + "'");
  }

  std::string choice(const std::string& key, const std::set<std::string>& allowed) const {
    const std::string& text = values_.at(key);
    if (!allowed.count(text)) throw ConfigError(key, "unsupported value '" + text + "'");
    return text;
  }

  const std::string& text(const std::string& key) const { return values_.at(key); }

 private:
  static std::string format(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  const std::map<std::string, std::string>& values_;
};

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& origin) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto [key, value] = split_assignment(line, origin + ":" + std::to_string(lineno));
    out[key] = value;
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, value] : values) {
    if (key == "workers" || key == "output_dir") continue;
    out.emplace_back("config." + key, value);
  }
  return out;
}

RunConfig parse_config(const std::string& file_text, const std::vector<std::string>& overrides) {
  std::map<std::string, std::string> values = config_defaults();
  if (const char* env = std::getenv("CQED_OUTPUT_DIR"); env && *env) values["output_dir"] = env;
  merge(values, parse_key_values(file_text, "config file"));
  std::map<std::string, std::string> flags;
  for (const std::string& item : overrides) {
    auto [key, value] = split_assignment(item, "--set");
    flags[key] = value;
  }
  merge(values, flags);

  const Reader r(values);
  RunConfig cfg;
  cfg.values = values;

  SystemParams& p = cfg.setup.params;
  const double kappa = r.real("kappa_mhz_over_2pi", 0.0) * two_pi_mhz;
  const double kappa_loss = r.real("kappa_loss_mhz_over_2pi", 0.0) * two_pi_mhz;
  if (kappa_loss > kappa) throw ConfigError("kappa_loss_mhz_over_2pi", "exceeds the total kappa");
  p = with_symmetric_mirrors(p, kappa, kappa_loss);
  p.g = r.real("g_mhz_over_2pi", 0.0) * two_pi_mhz;
  const double gamma = r.real("gamma_mhz_over_2pi", 0.0) * two_pi_mhz;
  const double share = r.real("gamma_a_share", 0.0);
  if (share > 1.0) throw ConfigError("gamma_a_share", "must lie in [0, 1]");
  p.gamma_a = share * gamma;
  p.gamma_b = (1.0 - share) * gamma;
  p.delta = r.real("delta_mhz_over_2pi") * two_pi_mhz;
  p.delta2 = r.real("delta2_mhz_over_2pi") * two_pi_mhz;
  p.fock_cutoff = static_cast<int>(r.integer("fock_cutoff", 1, 60));

  cfg.setup.calibrate = r.boolean("calibrate");
  cfg.setup.mode = calibration_mode_from_name(r.choice("calibration_mode", {"transmitted", "peak"}));
  cfg.setup.n_bar_in = r.real("n_bar_in", 0.0);
  const double n_cav = r.real("n_bar_cavity", 0.0);
  cfg.setup.cavity_fraction = cfg.setup.n_bar_in > 0.0 ? n_cav / cfg.setup.n_bar_in : 0.0;
  cfg.setup.lambda2_n_bar_in = r.real("lambda2_n_bar_in", 0.0);
  if (cfg.setup.calibrate && !(kappa > 0.0)) {
    throw ConfigError("kappa_mhz_over_2pi", "calibration needs kappa > 0");
  }

  ScheduleConfig& s = cfg.setup.schedule;
  s.omega_max = r.real("omega_max_over_gamma", 0.0) * gamma;
  s.omega_phase = r.real("omega_phase_rad");
  s.edge_time = r.real("edge_time_ns", 0.0, true) * 1e-9;
  s.lambda_width = r.real("lambda_width_ns", 0.0, true) * 1e-9;
  s.lambda2_width = r.real("lambda2_width_ns", 0.0, true) * 1e-9;
  s.lambda2_offset = r.real("lambda2_offset_ns") * 1e-9;
  s.delta_t = r.real("delta_t_ns", 0.0) * 1e-9;
  s.t1 = r.real("t1_ns") * 1e-9;

  cfg.readout_window = r.real("readout_window_ns", 0.0, true) * 1e-9;
  cfg.emission_tail = r.real("emission_tail_ns", 0.0, true) * 1e-9;
  const double first = r.real("t1_first_ns") * 1e-9;
  const double last = r.real("t1_last_ns") * 1e-9;
  cfg.t1_grid = uniform_grid(first, last, static_cast<int>(r.integer("t1_points", 1, 100000)));
  cfg.theta_grid = phase_grid(static_cast<int>(r.integer("theta_points", 4, 100000)));
  cfg.window = r.real("window_ns", 0.0, true) * 1e-9;
  cfg.initial_state = r.choice("initial_state", {"a", "b", "ab"});
  cfg.polarization_modes = static_cast<int>(r.integer("polarization_modes", 1, 2));
  cfg.n_traj = static_cast<int>(r.integer("n_traj", 0, 100000000));
  cfg.seed = r.unsigned64("seed");
  cfg.workers = static_cast<int>(r.integer("workers", 1, 4096));
  cfg.output_dir = r.text("output_dir");
  if (cfg.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");

  cfg.integration.sample_dt = r.real("sample_dt_ns", 0.0, true) * 1e-9;
  cfg.integration.tol.atol = r.real("atol", 0.0, true);
  cfg.integration.tol.rtol = r.real("rtol", 0.0, true);
  return cfg;
}

RunConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::vector<std::string>& overrides) {
  std::string text;
  if (file) {
    std::ifstream in(*file, std::ios::binary);
    if (!in) throw ConfigError("--config", "cannot read " + file->string());
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  return parse_config(text, overrides);
}

ProtocolSetup make_setup(const RunConfig& config) {
  ProtocolSetup setup = calibrated_setup(config.setup);
  setup.integration = config.integration;
  setup.trajectories.tol = config.integration.tol;
  setup.trajectories.workers = config.workers;
  setup.workers = config.workers;
  setup.readout_window = config.readout_window;
  setup.emission_tail = config.emission_tail;
  return setup;
}

}  // namespace cqed
