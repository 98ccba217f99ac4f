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


#include "cqed/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cqed/errors.hpp"
#include "cqed/parallel.hpp"

namespace cqed {

ProtocolSetup calibrated_setup(const SetupOptions& options) {
  ProtocolSetup setup;
  setup.schedule = options.schedule;
  setup.n_bar_in = options.n_bar_in;
  if (options.calibrate) {
    const CalibrationResult cal =
        calibrate_input(options.n_bar_in, options.params, options.schedule.lambda_width,
                        options.mode, options.cavity_fraction);
    setup.params = cal.params;
  } else {
    options.params.validate();
    setup.params = options.params;
  }
  setup.schedule.lambda_peak =
      lambda_peak_for(options.n_bar_in, setup.params.kappa_in, setup.schedule.lambda_width);
  setup.schedule.lambda2_peak = lambda_peak_for(options.lambda2_n_bar_in, setup.params.kappa_in,
                                                setup.schedule.lambda2_width);
  return setup;
}

namespace {

ScheduleConfig with_toggles(const ProtocolSetup& setup, bool omega1, bool omega2, bool lambda1,
                            bool lambda2) {
  ScheduleConfig c = setup.schedule;
  c.omega1_on = omega1;
  c.omega2_on = omega2;
  c.lambda1_on = lambda1;
  c.lambda2_on = lambda2;
  return c;
}

QuantumState ground_b(const SystemParams& params) {
  return QuantumState::basis(build_space(params.fock_cutoff), Level::b, 0);
}

double sequence_end(const ProtocolSetup& setup) {
  const ScheduleConfig& c = setup.schedule;
  return std::max(c.delta_t + c.edge_time + setup.emission_tail,
                  c.delta_t + c.lambda2_offset + 4.0 * c.lambda2_width);
}

}  // namespace

EmissionRecord run_single_photon(const ProtocolSetup& setup, const QuantumState& initial) {
  const ScheduleConfig cfg = with_toggles(setup, false, true, false, false);
  const double t0 = cfg.delta_t;
  const double t1 = cfg.delta_t + cfg.edge_time + setup.emission_tail;
  MasterResult run = integrate_master(initial, make_schedule(cfg), setup.params, t0, t1,
                                      setup.integration);
  EmissionRecord rec;
  rec.series = std::move(run.series);
  rec.emission_probability = integrate_window(rec.series.t, rec.series.flux_out, t0, t1);
  rec.shape.assign(rec.series.size(), 0.0);
  if (rec.emission_probability > 0.0) {
    for (std::size_t k = 0; k < rec.shape.size(); ++k) {
      rec.shape[k] = rec.series.flux_out[k] / rec.emission_probability;
    }
  }
  return rec;
}

double absorption_start(const ProtocolSetup& setup, double t1) {
  return std::min(t1 - 4.0 * setup.schedule.lambda_width, 0.0);
}

double readout_time(const ProtocolSetup& setup, double t1) {
  const ScheduleConfig& c = setup.schedule;
  return std::max({c.delta_t, t1 + 4.0 * c.lambda_width, c.edge_time});
}

AbsorptionRecord run_absorption(const ProtocolSetup& setup, double t1, bool omega1_on,
                                bool with_detection, bool lambda1_on) {
  ScheduleConfig cfg = with_toggles(setup, omega1_on, false, lambda1_on, false);
  cfg.t1 = t1;
  AbsorptionRecord rec;
  rec.t1 = t1;
  rec.omega1_on = omega1_on;
  rec.t_readout = readout_time(setup, t1);
  const double t0 = absorption_start(setup, t1);
  MasterResult stage = integrate_master(ground_b(setup.params), make_schedule(cfg), setup.params,
                                        t0, rec.t_readout, setup.integration);
  rec.p = stage.series.P_a.back();
  if (with_detection) {
    cfg.omega2_on = true;
    cfg.delta_t = rec.t_readout;
    const double t_end = rec.t_readout + setup.readout_window;
    MasterResult readout = integrate_master(stage.final_state, make_schedule(cfg), setup.params,
                                            rec.t_readout, t_end, setup.integration);
    rec.detection_prob = window_count(readout.series, rec.t_readout, setup.readout_window);
  }
  return rec;
}

TrajectoryEnsemble absorption_trajectories(const ProtocolSetup& setup, double t1, bool omega1_on,
                                           int n_traj, std::uint64_t seed) {
  ScheduleConfig cfg = with_toggles(setup, omega1_on, false, true, false);
  cfg.t1 = t1;
  const auto space = build_space(setup.params.fock_cutoff);
  Vector psi = Vector::Zero(space.total_dim());
  psi(space.index(Level::b, 0)) = 1.0;
  return run_trajectories(QuantumState::ket(space, psi), make_schedule(cfg), setup.params,
                          absorption_start(setup, t1), readout_time(setup, t1), n_traj, seed,
                          setup.trajectories);
}

SweepResult sweep_arrival(const ProtocolSetup& setup, const std::vector<double>& t1_grid,
                          int n_traj, std::uint64_t seed) {
  if (t1_grid.empty()) throw InvalidArgument("empty t1 grid");
  if (n_traj < 0) throw InvalidArgument("n_traj must be >= 0");
  SweepResult out;
  out.t1 = t1_grid;
  out.n_traj = n_traj;
  out.seed = seed;
  out.p_i = run_absorption(setup, 0.0, false, false).p;
  if (!(out.p_i > 0.0)) throw DegenerateRatio("incoherent transfer probability p_i is zero");

  const auto n = t1_grid.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.p_a.assign(n, 0.0);
  out.r.assign(n, 0.0);
  out.r_c.assign(n, nan);
  out.r_i.assign(n, nan);
  out.r_c_err.assign(n, nan);
  out.r_i_err.assign(n, nan);

  ProtocolSetup inner = setup;
  inner.trajectories.workers = 1;
  parallel_for(static_cast<int>(n), setup.workers, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    out.p_a[k] = run_absorption(inner, t1_grid[k], true, false).p;
    out.r[k] = out.p_a[k] / out.p_i;
    if (n_traj > 0) {
      const auto ens = absorption_trajectories(inner, t1_grid[k], true, n_traj,
                                               derive_seed(seed, static_cast<std::uint64_t>(k)));
      const PartitionResult part = partition_coherent(ens);
      out.r_c[k] = part.p_c / out.p_i;
      out.r_i[k] = part.p_i_component / out.p_i;
      out.r_c_err[k] = part.se_c / out.p_i;
      out.r_i_err[k] = part.se_i / out.p_i;
    }
  });
  return out;
}

namespace {

TimeSeries full_sequence(const ProtocolSetup& setup, const ScheduleConfig& cfg, double t_end) {
  return integrate_master(ground_b(setup.params), make_schedule(cfg), setup.params,
                          absorption_start(setup, cfg.t1), t_end, setup.integration)
      .series;
}

}  // namespace

double emission_peak_time(const ProtocolSetup& setup) {
  const ScheduleConfig cfg = with_toggles(setup, true, true, true, false);
  const TimeSeries s = full_sequence(setup, cfg, sequence_end(setup));
  std::size_t best = s.size();
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.t[k] < cfg.delta_t) continue;
    if (best == s.size() || s.flux_out[k] > s.flux_out[best]) best = k;
  }
  if (best == s.size() || !(s.flux_out[best] > 0.0)) {
    throw DegenerateRatio("no emission after the Omega_2 rise");
  }
  return s.t[best];
}

FringeCurve run_fringe(const ProtocolSetup& setup, const std::vector<double>& theta_grid,
                       double window, double center, bool omega1_on, bool lambda1_on) {
  if (theta_grid.empty()) throw InvalidArgument("empty theta grid");
  if (!(window > 0.0)) throw InvalidArgument("detection window must be > 0");
  const double start = center - 0.5 * window;
  const double t_end = std::max(sequence_end(setup), center + 0.5 * window);
  FringeCurve curve;
  const auto n = theta_grid.size();
  curve.n.assign(n, 0.0);
  parallel_for(static_cast<int>(n), setup.workers, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    ScheduleConfig cfg = with_toggles(setup, omega1_on, true, lambda1_on, true);
    cfg.theta = theta_grid[k];
    curve.n[k] = window_count(full_sequence(setup, cfg, t_end), start, window);
  });
  if (!(curve.n.front() > 0.0)) throw DegenerateRatio("no photons in the window at theta_0");
  curve.R.resize(n);
  for (std::size_t k = 0; k < n; ++k) curve.R[k] = curve.n[k] / curve.n.front();
  curve.fit = fit_visibility(theta_grid, curve.n);
  return curve;
}

FringeResult fringe_experiment(const ProtocolSetup& setup, const std::vector<double>& theta_grid,
                               double window) {
  FringeResult out;
  out.theta = theta_grid;
  out.window = window;
  out.window_center = emission_peak_time(setup);
  out.adiabatic = run_fringe(setup, theta_grid, window, out.window_center, true);
  out.incoherent = run_fringe(setup, theta_grid, window, out.window_center, false);
  return out;
}

FieldEnvelopes fringe_envelopes(const ProtocolSetup& setup) {
  auto envelope = [&](const ScheduleConfig& cfg) {
    const TimeSeries s = full_sequence(setup, cfg, sequence_end(setup));
    SampledEnvelope env;
    env.t = s.t;
    env.values.resize(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      env.values[k] = std::sqrt(std::max(s.n_cav[k], 0.0)) * std::polar(1.0, std::arg(s.field[k]));
    }
    return env;
  };
  FieldEnvelopes out;
  out.alpha = envelope(with_toggles(setup, true, true, true, false));
  out.beta = envelope(with_toggles(setup, true, false, true, true));
  return out;
}

double overlap_estimate(const ProtocolSetup& setup, double window) {
  const double center = emission_peak_time(setup);
  const FieldEnvelopes env = fringe_envelopes(setup);
  return overlap_visibility(env.alpha, env.beta, center - 0.5 * window, center + 0.5 * window);
}

double efficiency_budget(double kappa_in, double kappa_out, double kappa_loss,
                         int polarization_modes) {
  if (kappa_in < 0.0 || kappa_out < 0.0 || kappa_loss < 0.0) {
    throw InvalidArgument("cavity rates must be >= 0");
  }
  if (polarization_modes != 1 && polarization_modes != 2) {
    throw InvalidArgument("polarization_modes must be 1 or 2");
  }
  const double kappa = kappa_in + kappa_out + kappa_loss;
  if (!(kappa > 0.0)) throw InvalidArgument("efficiency budget needs kappa > 0");
  return kappa_in / kappa / static_cast<double>(polarization_modes);
}

std::vector<double> uniform_grid(double first, double last, int points) {
  if (points < 1) throw InvalidArgument("grid needs at least one point");
  if (points == 1) return {first};
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    grid[static_cast<std::size_t>(k)] = first + (last - first) * k / (points - 1);
  }
  return grid;
}

std::vector<double> phase_grid(int points) {
  if (points < 1) throw InvalidArgument("phase grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    grid[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / points;
  }
  return grid;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace cqed
