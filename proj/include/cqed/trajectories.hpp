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
#include <vector>

#include "cqed/hamiltonian.hpp"
#include "cqed/hilbert.hpp"
#include "cqed/integrator.hpp"
#include "cqed/master.hpp"
#include "cqed/params.hpp"

namespace cqed {

struct JumpRecord {
  double time = 0.0;
  Channel channel = Channel::out;
};

struct TrajectoryRecord {
  GroundPopulations final;
  std::vector<JumpRecord> jumps;
  // Normalised populations at TrajectoryOptions::checkpoints, if requested.
  std::vector<GroundPopulations> checkpoints;
};

struct TrajectoryEnsemble {
  int n_traj = 0;
  std::uint64_t seed = 0;
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<TrajectoryRecord> records;
};

struct TrajectoryOptions {
  Tolerances tol;
  // Jump times are located to this accuracy (s); <= 0 selects 1e-3 / kappa
  // (or 1e-3 / gamma for an empty cavity).
  double jump_time_accuracy = 0.0;
  // Times in [t0, t1] at which to record populations.
  std::vector<double> checkpoints;
  // 1 runs the serial reference loop; > 1 distributes trajectories over
  // OpenMP threads. Results do not depend on this value.
  int workers = 1;
};

// Monte-Carlo wavefunction unravelling. Each trajectory evolves under
// K = H - (i/2) sum L^dag L until its squared norm drops below a uniform
// variate, at which point the jump time is bisected, a channel is drawn in
// proportion to ||L_c psi||^2 and the state is collapsed. Trajectory k draws
// from a generator seeded by (seed, k).
TrajectoryEnsemble run_trajectories(const QuantumState& initial, const ControlFunction& controls,
                                    const SystemParams& params, double t0, double t1, int n_traj,
                                    std::uint64_t seed, const TrajectoryOptions& options = {});
TrajectoryEnsemble run_trajectories(const QuantumState& initial, const PulseSchedule& schedule,
                                    const SystemParams& params, double t0, double t1, int n_traj,
                                    std::uint64_t seed, const TrajectoryOptions& options = {});

// A single trajectory; exposed so the serial and parallel drivers share it.
TrajectoryRecord run_one_trajectory(const QuantumState& initial, const ControlFunction& controls,
                                    const SystemParams& params, double t0, double t1,
                                    std::uint64_t seed, int index,
                                    const TrajectoryOptions& options);

}  // namespace cqed
