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


#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cqed/experiments.hpp"
#include "cqed/master.hpp"

namespace cqed {

// Resolved run configuration. Rates are entered as (2 pi) x MHz and times in
// ns; the typed fields below are SI (rad/s, s).
struct RunConfig {
  SetupOptions setup;
  IntegrationOptions integration;
  double readout_window = 1.0e-6;
  double emission_tail = 1.0e-6;
  std::vector<double> t1_grid;
  std::vector<double> theta_grid;
  double window = 200.0e-9;
  std::string initial_state = "a";
  int polarization_modes = 2;
  int n_traj = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string output_dir;

  // Every key with its resolved text value, sorted by key.
  std::map<std::string, std::string> values;

  // Keys that describe the computation (everything except workers and
  // output_dir), for embedding in output files.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

// Built-in defaults, in key order.
const std::map<std::string, std::string>& config_defaults();

// Parses "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& origin);

// defaults <- file_text <- overrides ("key=value"). Unknown keys, bad types
// and out-of-range values raise ConfigError naming the key. The output_dir
// default comes from CQED_OUTPUT_DIR when set.
RunConfig parse_config(const std::string& file_text, const std::vector<std::string>& overrides);
RunConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::vector<std::string>& overrides);

ProtocolSetup make_setup(const RunConfig& config);

}  // namespace cqed
