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

#include "cqed/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "cqed/errors.hpp"

namespace cqed {

void SystemParams::validate() const {
  const std::array<std::pair<const char*, double>, 8> rates{{{"g", g},
                                                             {"kappa_in", kappa_in},
                                                             {"kappa_out", kappa_out},
                                                             {"kappa_loss", kappa_loss},
                                                             {"gamma_a", gamma_a},
                                                             {"gamma_b", gamma_b},
                                                             {"delta", delta},
                                                             {"delta2", delta2}}};
  for (const auto& [name, value] : rates) {
    if (!std::isfinite(value)) throw InvalidArgument(std::string(name) + " is not finite");
  }
  for (int i = 0; i < 6; ++i) {
    if (rates[i].second < 0.0) {
      throw InvalidArgument(std::string(rates[i].first) + " must be >= 0");
    }
  }
  if (fock_cutoff < 1) throw InvalidArgument("fock_cutoff must be >= 1");
}

SystemParams with_symmetric_mirrors(SystemParams params, double kappa_total, double kappa_loss) {
  if (kappa_loss < 0.0 || kappa_loss > kappa_total) {
    throw InvalidArgument("kappa_loss must lie in [0, kappa]");
  }
  params.kappa_loss = kappa_loss;
  params.kappa_in = 0.5 * (kappa_total - kappa_loss);
  params.kappa_out = params.kappa_in;
  return params;
}

std::string_view channel_name(Channel channel) {
  switch (channel) {
    case Channel::out:
      return "out";
    case Channel::in:
      return "in";
    case Channel::loss:
      return "loss";
    case Channel::spont_a:
      return "spont_a";
    case Channel::spont_b:
      return "spont_b";
  }
  return "?";
}

Operator hamiltonian_at(const SystemParams& params, const SpaceDescriptor& space,
                        const Controls& controls) {
  const Operator a = annihilation(space);
  const Operator s_ee = atomic_projector_and_flips(space, Level::e, Level::e);
  const Operator s_aa = atomic_projector_and_flips(space, Level::a, Level::a);
  const Operator s_eb = atomic_projector_and_flips(space, Level::e, Level::b);
  const Operator s_ea = atomic_projector_and_flips(space, Level::e, Level::a);

  const Complex drive = 0.5 * controls.omega * std::polar(1.0, controls.omega_phase);
  const Operator coupling = params.g * a * s_eb + drive * s_ea + controls.lambda * a.adjoint();
  return -params.delta * s_ee + params.delta2 * s_aa + coupling + Operator(coupling.adjoint());
}

std::vector<JumpOperator> jump_operators(const SystemParams& params, const SpaceDescriptor& space) {
  const Operator a = annihilation(space);
  return {
      {Channel::out, std::sqrt(2.0 * params.kappa_out) * a},
      {Channel::in, std::sqrt(2.0 * params.kappa_in) * a},
      {Channel::loss, std::sqrt(2.0 * params.kappa_loss) * a},
      {Channel::spont_a,
       std::sqrt(2.0 * params.gamma_a) * atomic_projector_and_flips(space, Level::a, Level::e)},
      {Channel::spont_b,
       std::sqrt(2.0 * params.gamma_b) * atomic_projector_and_flips(space, Level::b, Level::e)},
  };
}

Matrix lindblad_rhs(const Matrix& rho, const SystemParams& params, const SpaceDescriptor& space,
                    const Controls& controls) {
  if (rho.rows() != space.total_dim() || rho.cols() != space.total_dim()) {
    throw InvalidArgument("density matrix does not match space dimension");
  }
  const Operator h = hamiltonian_at(params, space, controls);
  const Complex i_unit(0.0, 1.0);
  Matrix drho = -i_unit * (h * rho - rho * h);
  for (const auto& jump : jump_operators(params, space)) {
    const Operator& l = jump.op;
    const Operator ldl = l.adjoint() * l;
    drho += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return drho;
}

}  // namespace cqed
