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

#include <array>
#include <string_view>
#include <vector>

#include "cqed/hilbert.hpp"
#include "cqed/params.hpp"

namespace cqed {

// Instantaneous drive values: classical Rabi frequency and phase on a <-> e,
// and the complex cavity pumping strength (both rad/s).
struct Controls {
  double omega = 0.0;
  double omega_phase = 0.0;
  Complex lambda{0.0, 0.0};
};

enum class Channel : int { out = 0, in = 1, loss = 2, spont_a = 3, spont_b = 4 };
inline constexpr int channel_count = 5;
std::string_view channel_name(Channel channel);

// H / hbar in the frame rotating at both drive frequencies:
//   -delta sigma_ee + delta2 sigma_aa
//   + [ g a sigma_eb + (omega/2) e^{i phase} sigma_ea + lambda a^dag + h.c. ]
Operator hamiltonian_at(const SystemParams& params, const SpaceDescriptor& space,
                        const Controls& controls);

struct JumpOperator {
  Channel channel;
  Operator op;
};

// sqrt(2 kappa_c) a for the three cavity channels, sqrt(2 gamma_a) sigma_ae
// and sqrt(2 gamma_b) sigma_be for spontaneous emission.
std::vector<JumpOperator> jump_operators(const SystemParams& params, const SpaceDescriptor& space);

// Dense reference Lindblad right-hand side. The integrators use the structured
// kernel in kernel.hpp; this one is kept as the oracle it is tested against.
Matrix lindblad_rhs(const Matrix& rho, const SystemParams& params, const SpaceDescriptor& space,
                    const Controls& controls);

}  // namespace cqed
