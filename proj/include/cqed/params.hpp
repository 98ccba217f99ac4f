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

#include <numbers>

namespace cqed {

// Paper-style (2 pi) x MHz -> rad/s.
inline constexpr double two_pi_mhz = 2.0 * std::numbers::pi * 1.0e6;

// Physical rates of the atom-cavity system, all in rad/s.
//
// kappa_* and gamma_* are amplitude decay rates: the intracavity photon number
// decays at 2 kappa and the excited-state population at 2 gamma. The cavity
// decay kappa = kappa_in + kappa_out + kappa_loss is split into the input
// mirror, the output mirror and scatter/absorption; gamma = gamma_a + gamma_b
// is split by the branch the excited state decays into.
//
// delta is the blue detuning of the cavity and classical field from the atomic
// transitions; delta2 is the two-photon (Raman) detuning. The ground hyperfine
// splitting (2 pi x 9.193 GHz) drops out in the doubly rotating frame.
struct SystemParams {
  double g = 16.0 * two_pi_mhz;
  double kappa_in = 1.9 * two_pi_mhz;
  double kappa_out = 1.9 * two_pi_mhz;
  double kappa_loss = 0.0;
  double gamma_a = 1.3 * two_pi_mhz;
  double gamma_b = 1.3 * two_pi_mhz;
  double delta = 10.0 * two_pi_mhz;
  double delta2 = 0.0;
  int fock_cutoff = 4;

  double kappa() const { return kappa_in + kappa_out + kappa_loss; }
  double gamma() const { return gamma_a + gamma_b; }

  // Throws InvalidArgument on negative rates or fock_cutoff < 1.
  void validate() const;
};

// Returns params with kappa_loss set and kappa_in = kappa_out sharing the
// remainder of the total kappa.
SystemParams with_symmetric_mirrors(SystemParams params, double kappa_total, double kappa_loss);

}  // namespace cqed
