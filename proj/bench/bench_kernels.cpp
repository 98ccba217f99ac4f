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


#include <benchmark/benchmark.h>

#include "cqed/experiments.hpp"
#include "cqed/hamiltonian.hpp"
#include "cqed/kernel.hpp"
#include "cqed/master.hpp"
#include "cqed/trajectories.hpp"

using namespace cqed;

namespace {

SystemParams params_with_cutoff(int cutoff) {
  SystemParams p;
  p.fock_cutoff = cutoff;
  return p;
}

Controls busy_controls() { return Controls{2.0e7, 0.3, Complex(1.0e6, 2.0e5)}; }

Matrix mixed_state(const SpaceDescriptor& space) {
  Matrix m = Matrix::Random(space.total_dim(), space.total_dim());
  Matrix rho = m * m.adjoint();
  return rho / rho.trace();
}

void BM_DenseRhs(benchmark::State& state) {
  const SystemParams p = params_with_cutoff(static_cast<int>(state.range(0)));
  const auto space = build_space(p.fock_cutoff);
  const Matrix rho = mixed_state(space);
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_rhs(rho, p, space, busy_controls()));
}

void BM_KernelRhs(benchmark::State& state) {
  const SystemParams p = params_with_cutoff(static_cast<int>(state.range(0)));
  const auto space = build_space(p.fock_cutoff);
  const LindbladKernel kernel(p, space);
  const Matrix rho = mixed_state(space);
  Matrix drho(rho.rows(), rho.cols());
  for (auto _ : state) {
    kernel.lindblad(busy_controls(), rho, drho);
    benchmark::DoNotOptimize(drho.data());
  }
}

void BM_AbsorptionMaster(benchmark::State& state) {
  const ProtocolSetup setup = calibrated_setup(SetupOptions{});
  for (auto _ : state) benchmark::DoNotOptimize(run_absorption(setup, 0.0, true, false).p);
}

// Trajectory ensembles on the serial path (1) and the OpenMP path (> 1).
void BM_AbsorptionTrajectories(benchmark::State& state) {
  ProtocolSetup setup = calibrated_setup(SetupOptions{});
  setup.trajectories.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(absorption_trajectories(setup, 0.0, true, 200, 1).records.size());
  }
}

}  // namespace

BENCHMARK(BM_DenseRhs)->Arg(1)->Arg(4)->Arg(6)->Arg(10);
BENCHMARK(BM_KernelRhs)->Arg(1)->Arg(4)->Arg(6)->Arg(10);
BENCHMARK(BM_AbsorptionMaster)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AbsorptionTrajectories)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
