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

#include "cqed/trajectories.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "cqed/errors.hpp"
#include "cqed/kernel.hpp"
#include "cqed/parallel.hpp"

namespace cqed {

namespace {

std::mt19937_64 stream_for(std::uint64_t seed, int index) {
  const auto k = static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& gen) {
  // 53 random bits -> [0, 1); avoids distribution implementation differences.
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

GroundPopulations normalized_populations(const SpaceDescriptor& space, const Vector& psi) {
  GroundPopulations p = ground_populations(space, psi);
  const double norm2 = psi.squaredNorm();
  p.a /= norm2;
  p.b /= norm2;
  p.e /= norm2;
  return p;
}

double default_accuracy(const SystemParams& params) {
  const double rate = params.kappa() > 0.0 ? params.kappa() : params.gamma();
  return rate > 0.0 ? 1.0e-3 / rate : 1.0e-12;
}

}  // namespace

TrajectoryRecord run_one_trajectory(const QuantumState& initial, const ControlFunction& controls,
                                    const SystemParams& params, double t0, double t1,
                                    std::uint64_t seed, int index,
                                    const TrajectoryOptions& options) {
  const SpaceDescriptor space = initial.space();
  const LindbladKernel kernel(params, space);
  auto rhs = [&](double t, const Vector& psi, Vector& dpsi) {
    kernel.schrodinger(controls(t), psi, dpsi);
  };
  auto stepper = make_dormand_prince<Vector>(rhs, options.tol);
  const double accuracy =
      options.jump_time_accuracy > 0.0 ? options.jump_time_accuracy : default_accuracy(params);

  std::mt19937_64 gen = stream_for(seed, index);
  TrajectoryRecord record;
  stepper.reset(t0, initial.normalized().amplitudes());
  double threshold = uniform01(gen);

  std::size_t next_checkpoint = 0;
  const auto& checkpoints = options.checkpoints;
  auto flush_checkpoints = [&]() {
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] <= stepper.t()) {
      record.checkpoints.push_back(normalized_populations(space, stepper.y()));
      ++next_checkpoint;
    }
  };
  flush_checkpoints();

  double h = stepper.step_size();
  std::array<double, channel_count> rates{};
  Vector collapsed(space.total_dim());

  while (stepper.t() < t1) {
    const double stop =
        next_checkpoint < checkpoints.size() ? std::min(checkpoints[next_checkpoint], t1) : t1;
    const double remaining = stop - stepper.t();
    const bool clamped = h >= remaining;
    const double h_try = clamped ? remaining : h;
    const double err = stepper.attempt(h_try);
    if (err > 1.0) {
      h = stepper.propose(h_try, err);
      if (h < options.tol.h_min) throw IntegrationFailure("step size underflow", stepper.t());
      continue;
    }
    const double next_h = stepper.propose(h_try, err);
    h = clamped ? std::max(h, next_h) : next_h;

    if (stepper.trial().squaredNorm() > threshold) {
      stepper.accept();
      if (clamped) {
        // Land exactly on the stop time.
        stepper.set_state(stop, stepper.y());
        flush_checkpoints();
      }
      continue;
    }

    // The norm crossed the threshold inside (t, t + h_try]; bisect for the jump time.
    const double t_start = stepper.t();
    double lo = 0.0;
    double hi = h_try;
    while (hi - lo > accuracy) {
      const double mid = 0.5 * (lo + hi);
      stepper.attempt(mid);
      if (stepper.trial().squaredNorm() > threshold) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    stepper.attempt(hi);
    stepper.accept();
    const double t_jump = (hi == h_try && clamped) ? stop : t_start + hi;

    const Vector& psi = stepper.y();
    double total = 0.0;
    for (int c = 0; c < channel_count; ++c) {
      rates[c] = kernel.jump_rate(static_cast<Channel>(c), psi);
      total += rates[c];
    }
    if (total <= 0.0) {
      // Norm loss without an open channel can only be integration error.
      throw IntegrationFailure("norm decayed with no open jump channel", t_jump);
    }
    const double pick = uniform01(gen) * total;
    int chosen = channel_count - 1;
    double cumulative = 0.0;
    for (int c = 0; c < channel_count; ++c) {
      cumulative += rates[c];
      if (pick < cumulative && rates[c] > 0.0) {
        chosen = c;
        break;
      }
    }
    while (rates[chosen] <= 0.0) --chosen;
    kernel.apply_jump(static_cast<Channel>(chosen), psi, collapsed);
    collapsed /= collapsed.norm();
    stepper.set_state(t_jump, collapsed);
    record.jumps.push_back({t_jump, static_cast<Channel>(chosen)});
    threshold = uniform01(gen);
    flush_checkpoints();
  }

  record.final = normalized_populations(space, stepper.y());
  return record;
}

TrajectoryEnsemble run_trajectories(const QuantumState& initial, const ControlFunction& controls,
                                    const SystemParams& params, double t0, double t1, int n_traj,
                                    std::uint64_t seed, const TrajectoryOptions& options) {
  if (!initial.is_ket()) throw InvalidArgument("trajectories require a pure initial state");
  if (n_traj < 1) throw InvalidArgument("n_traj must be >= 1");
  if (!(t1 > t0)) throw InvalidArgument("integration span must have t1 > t0");
  params.validate();
  if (initial.space().fock_cutoff != params.fock_cutoff) {
    throw InvalidArgument("initial state and params disagree on fock_cutoff");
  }
  for (std::size_t i = 0; i < options.checkpoints.size(); ++i) {
    const double c = options.checkpoints[i];
    if (c < t0 || c > t1 || (i > 0 && c <= options.checkpoints[i - 1])) {
      throw InvalidArgument("checkpoints must be increasing and inside [t0, t1]");
    }
  }

  TrajectoryEnsemble ensemble;
  ensemble.n_traj = n_traj;
  ensemble.seed = seed;
  ensemble.t0 = t0;
  ensemble.t1 = t1;
  ensemble.records.resize(static_cast<std::size_t>(n_traj));
  parallel_for(n_traj, options.workers, [&](int k) {
    ensemble.records[static_cast<std::size_t>(k)] =
        run_one_trajectory(initial, controls, params, t0, t1, seed, k, options);
  });
  return ensemble;
}

TrajectoryEnsemble run_trajectories(const QuantumState& initial, const PulseSchedule& schedule,
                                    const SystemParams& params, double t0, double t1, int n_traj,
                                    std::uint64_t seed, const TrajectoryOptions& options) {
  return run_trajectories(
      initial, [&schedule](double t) { return schedule.controls(t); }, params, t0, t1, n_traj,
      seed, options);
}

}  // namespace cqed
