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

#include <functional>
#include <string>
#include <vector>

#include "cqed/hamiltonian.hpp"
#include "cqed/hilbert.hpp"
#include "cqed/integrator.hpp"
#include "cqed/params.hpp"
#include "cqed/pulses.hpp"

namespace cqed {

using ControlFunction = std::function<Controls(double)>;

// Sampled expectation values on a strictly increasing time grid (s).
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> P_a, P_b, P_e;
  std::vector<double> n_cav;
  // 2 kappa_out <a^dag a>, photons per second through the output mirror.
  std::vector<double> flux_out;
  std::vector<double> trace_residual;
  // <a>, the coherent intracavity amplitude.
  std::vector<Complex> field;
  // Filled only when IntegrationOptions::track_sanity is set.
  std::vector<double> hermiticity_residual;
  std::vector<double> min_eigenvalue;

  std::size_t size() const { return t.size(); }
};

struct IntegrationOptions {
  double sample_dt = 1.0e-9;
  Tolerances tol;
  bool track_sanity = false;
  // Trace residual above which the run is rejected.
  double accuracy_limit = 1.0e-6;
};

struct MasterResult {
  TimeSeries series;
  QuantumState final_state;
  long steps = 0;
};

// Adaptive integration of the Lindblad master equation over [t0, t1]. Kets are
// promoted to density matrices. Samples land on t0 + k sample_dt plus t1. The
// trace is never renormalised; its residual is recorded per sample.
MasterResult integrate_master(const QuantumState& initial, const ControlFunction& controls,
                              const SystemParams& params, double t0, double t1,
                              const IntegrationOptions& options = {});
MasterResult integrate_master(const QuantumState& initial, const PulseSchedule& schedule,
                              const SystemParams& params, double t0, double t1,
                              const IntegrationOptions& options = {});

}  // namespace cqed
