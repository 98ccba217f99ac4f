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
#include <variant>
#include <vector>

#include "cqed/analysis.hpp"
#include "cqed/calibration.hpp"
#include "cqed/hilbert.hpp"
#include "cqed/master.hpp"
#include "cqed/params.hpp"
#include "cqed/pulses.hpp"
#include "cqed/trajectories.hpp"

namespace cqed {

// Everything the protocol drivers need. The drivers overwrite the toggles,
// t1 and theta of `schedule`; timings, shapes and peaks are taken as given.
struct ProtocolSetup {
  SystemParams params;
  ScheduleConfig schedule;
  IntegrationOptions integration;
  TrajectoryOptions trajectories;
  // Grid points run on this many OpenMP threads; 1 is the serial reference.
  int workers = 1;
  // Photons in lambda_1 at M_in, used for the transfer efficiency.
  double n_bar_in = 1.1;
  // Detection window after the Omega_2 rising edge.
  double readout_window = 1.0e-6;
  // Emission is followed for this long after Omega_2 is fully on.
  double emission_tail = 1.0e-6;
};

struct SetupOptions {
  SystemParams params;          // kappa total is kept; split by calibration
  ScheduleConfig schedule;      // timings and widths; peaks are overwritten
  double n_bar_in = 1.1;
  double cavity_fraction = 0.68 / 1.1;
  CalibrationMode mode = CalibrationMode::transmitted;
  bool calibrate = true;
  double lambda2_n_bar_in = 3.0;
};

// Applies the input calibration and sets both lambda peaks.
ProtocolSetup calibrated_setup(const SetupOptions& options);

struct EmissionRecord {
  TimeSeries series;
  double emission_probability = 0.0;
  // flux_out normalised to unit area.
  std::vector<double> shape;
};

struct AbsorptionRecord {
  double t1 = 0.0;
  bool omega1_on = false;
  double p = 0.0;
  double detection_prob = 0.0;
  double t_readout = 0.0;
};

struct AbsorptionSet {
  std::vector<AbsorptionRecord> records;
};

struct SweepResult {
  std::vector<double> t1;
  std::vector<double> p_a;
  std::vector<double> r, r_c, r_i, r_c_err, r_i_err;
  double p_i = 0.0;
  int n_traj = 0;
  std::uint64_t seed = 0;
};

struct FringeCurve {
  std::vector<double> n;
  std::vector<double> R;
  FringeFit fit;
};

struct FringeResult {
  std::vector<double> theta;
  FringeCurve adiabatic;    // Omega_1 on
  FringeCurve incoherent;   // Omega_1 off
  double window = 0.0;
  double window_center = 0.0;
};

using ExperimentResult = std::variant<EmissionRecord, AbsorptionSet, SweepResult, FringeResult>;

// Omega_2 only, starting from `initial` (atom with an empty cavity).
EmissionRecord run_single_photon(const ProtocolSetup& setup, const QuantumState& initial);

// Start time of the absorption stage and the time P_a is read out: after
// lambda_1 has passed, Omega_1 has fallen, and no earlier than the Omega_2
// rise.
double absorption_start(const ProtocolSetup& setup, double t1);
double readout_time(const ProtocolSetup& setup, double t1);

// Atom starts in |b,0>. p = P_a at readout_time with Omega_2 held off. With
// with_detection set, a second run raises Omega_2 at the readout time and
// integrates the emitted flux over readout_window.
AbsorptionRecord run_absorption(const ProtocolSetup& setup, double t1, bool omega1_on,
                                bool with_detection = true, bool lambda1_on = true);

// Trajectory ensemble of the absorption stage (Omega_2 off).
TrajectoryEnsemble absorption_trajectories(const ProtocolSetup& setup, double t1, bool omega1_on,
                                           int n_traj, std::uint64_t seed);

// Throws DegenerateRatio if p_i vanishes. n_traj = 0 skips the partition.
SweepResult sweep_arrival(const ProtocolSetup& setup, const std::vector<double>& t1_grid,
                          int n_traj, std::uint64_t seed);

// Time of the maximum Omega_2-driven emission flux (t >= delta_t) for the
// full sequence with Omega_1 on and lambda_2 off.
double emission_peak_time(const ProtocolSetup& setup);

// One fringe curve with the window [center - window/2, center + window/2].
FringeCurve run_fringe(const ProtocolSetup& setup, const std::vector<double>& theta_grid,
                       double window, double center, bool omega1_on, bool lambda1_on = true);

// Both curves, window centred on emission_peak_time.
FringeResult fringe_experiment(const ProtocolSetup& setup, const std::vector<double>& theta_grid,
                               double window);

// Envelopes sqrt(<a^dag a>) e^{i arg<a>} of the stored-excitation field
// (lambda_2 off) and of the lambda_2 field alone (Omega_2 off), after the
// adiabatic absorption stage.
struct FieldEnvelopes {
  SampledEnvelope alpha;
  SampledEnvelope beta;
};
FieldEnvelopes fringe_envelopes(const ProtocolSetup& setup);

// overlap_visibility of fringe_envelopes over the window centred on
// emission_peak_time.
double overlap_estimate(const ProtocolSetup& setup, double window);

// Upper bound on the transfer probability per incident photon.
double efficiency_budget(double kappa_in, double kappa_out, double kappa_loss,
                         int polarization_modes);

std::vector<double> uniform_grid(double first, double last, int points);
// theta_k = 2 pi k / points.
std::vector<double> phase_grid(int points);

// Independent stream for grid point `index`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace cqed
