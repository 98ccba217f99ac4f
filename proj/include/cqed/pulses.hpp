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

#include <string>
#include <vector>

#include "cqed/hamiltonian.hpp"
#include "cqed/params.hpp"

namespace cqed {

// Timing and shape of the four pulses. Times are in seconds relative to the
// falling edge of Omega_1 (t = 0).
//
//   Omega_1: on at omega_max for t <= 0, cos^2 ramp to zero over [0, edge_time]
//   Omega_2: off for t <= delta_t, sin^2 ramp to omega_max over [delta_t, delta_t + edge_time]
//   lambda_1: Gaussian centred on t1
//   lambda_2: Gaussian centred on delta_t + lambda2_offset, carrying phase e^{i theta}
//
// lambda_width (lambda2_width) is the FWHM of the photon flux |lambda|^2, so
// the amplitude envelope is exp(-2 ln2 (t - tc)^2 / width^2). Both Omega pulses come from
// the same laser and share omega_phase.
struct ScheduleConfig {
  bool omega1_on = false;
  bool omega2_on = false;
  bool lambda1_on = false;
  bool lambda2_on = false;
  double t1 = 0.0;
  double delta_t = 1.0e-6;
  double theta = 0.0;
  double omega_max = 8.0 * 2.6 * two_pi_mhz;
  double omega_phase = 0.0;
  double edge_time = 100.0e-9;
  double lambda_width = 150.0e-9;
  double lambda2_width = 150.0e-9;
  Complex lambda_peak{0.0, 0.0};
  Complex lambda2_peak{0.0, 0.0};
  double lambda2_offset = 250.0e-9;
};

class PulseSchedule {
 public:
  PulseSchedule() = default;
  explicit PulseSchedule(const ScheduleConfig& config) : config_(config) {}

  const ScheduleConfig& config() const { return config_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  double omega1(double t) const;
  double omega2(double t) const;
  double omega(double t) const { return omega1(t) + omega2(t); }
  Complex lambda1(double t) const;
  Complex lambda2(double t) const;
  Complex lambda(double t) const { return lambda1(t) + lambda2(t); }
  Controls controls(double t) const;

  double lambda2_center() const { return config_.delta_t + config_.lambda2_offset; }
  // Half-width beyond which a lambda pulse is treated as zero (four FWHM).
  double lambda_half_support() const { return 4.0 * config_.lambda_width; }
  double lambda2_half_support() const { return 4.0 * config_.lambda2_width; }

 private:
  friend PulseSchedule make_schedule(const ScheduleConfig& config);

  ScheduleConfig config_;
  std::vector<std::string> warnings_;
};

// Validates the timings and records configuration warnings (for example a
// lambda_2 pulse that misses the Omega_2 rising edge).
PulseSchedule make_schedule(const ScheduleConfig& config);

// Peak pumping strength for a Gaussian coherent input pulse carrying n_bar
// photons at the input mirror: lambda = sqrt(2 kappa_in) sqrt(flux).
double lambda_peak_for(double n_bar, double kappa_in, double width);

}  // namespace cqed
