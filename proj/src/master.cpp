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

#include "cqed/master.hpp"

#include <cmath>

#include "cqed/errors.hpp"
#include "cqed/kernel.hpp"

namespace cqed {

namespace {

void record_sample(TimeSeries& series, double t, const Matrix& rho, const SpaceDescriptor& space,
                   const SystemParams& params, bool sanity) {
  const GroundPopulations pops = ground_populations(space, rho);
  double n = 0.0;
  Complex field(0.0, 0.0);
  const int nf = space.fock_dim();
  for (int l = 0; l < 3; ++l) {
    for (int k = 0; k < nf; ++k) {
      const int i = l * nf + k;
      n += k * rho(i, i).real();
      // <a> = Tr(a rho) = sum sqrt(k) rho(k, k-1)
      if (k > 0) field += std::sqrt(static_cast<double>(k)) * rho(i, i - 1);
    }
  }
  series.t.push_back(t);
  series.P_a.push_back(pops.a);
  series.P_b.push_back(pops.b);
  series.P_e.push_back(pops.e);
  series.n_cav.push_back(n);
  series.flux_out.push_back(2.0 * params.kappa_out * n);
  series.trace_residual.push_back(std::abs(rho.trace().real() - 1.0));
  series.field.push_back(field);
  if (sanity) {
    series.hermiticity_residual.push_back(max_abs_antihermitian(rho));
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
    series.min_eigenvalue.push_back(solver.eigenvalues().minCoeff());
  }
}

}  // namespace

MasterResult integrate_master(const QuantumState& initial, const ControlFunction& controls,
                              const SystemParams& params, double t0, double t1,
                              const IntegrationOptions& options) {
  if (!(t1 > t0)) throw InvalidArgument("integration span must have t1 > t0");
  if (!(options.sample_dt > 0.0)) throw InvalidArgument("sample_dt must be > 0");
  params.validate();
  const SpaceDescriptor space = initial.space();
  if (space.fock_cutoff != params.fock_cutoff) {
    throw InvalidArgument("initial state and params disagree on fock_cutoff");
  }

  const LindbladKernel kernel(params, space);
  auto rhs = [&](double t, const Matrix& rho, Matrix& drho) {
    kernel.lindblad(controls(t), rho, drho);
  };
  auto stepper = make_dormand_prince<Matrix>(rhs, options.tol);
  const Matrix rho0 = initial.to_density().rho();
  stepper.reset(t0, rho0);

  MasterResult result{TimeSeries{}, initial.to_density(), 0};
  TimeSeries& series = result.series;
  const auto n_samples = static_cast<long>(std::floor((t1 - t0) / options.sample_dt + 1e-9));
  series.t.reserve(n_samples + 2);

  record_sample(series, t0, rho0, space, params, options.track_sanity);
  for (long k = 1; k <= n_samples + 1; ++k) {
    double target = t0 + static_cast<double>(k) * options.sample_dt;
    if (target > t1 - 1e-6 * options.sample_dt) target = t1;
    stepper.advance_to(target);
    record_sample(series, target, stepper.y(), space, params, options.track_sanity);
    if (series.trace_residual.back() > options.accuracy_limit) {
      throw AccuracyFailure("trace residual " + std::to_string(series.trace_residual.back()) +
                            " exceeds limit at t = " + std::to_string(target));
    }
    if (target == t1) break;
  }
  result.final_state = QuantumState::density(space, stepper.y());
  result.steps = stepper.accepted_steps();
  return result;
}

MasterResult integrate_master(const QuantumState& initial, const PulseSchedule& schedule,
                              const SystemParams& params, double t0, double t1,
                              const IntegrationOptions& options) {
  return integrate_master(
      initial, [&schedule](double t) { return schedule.controls(t); }, params, t0, t1, options);
}

}  // namespace cqed
