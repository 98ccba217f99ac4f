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

#include <vector>

#include "cqed/hamiltonian.hpp"
#include "cqed/hilbert.hpp"
#include "cqed/params.hpp"

namespace cqed {

// Matrix-free action of the Lindblad generator. Every operator in the model is
// a ladder or a level flip, so K = H - (i/2) sum_c L_c^dag L_c applied to a
// column costs O(dim) and the full Lindblad right-hand side O(dim^2). The dense
// operators of hilbert.hpp remain the reference this is tested against.
class LindbladKernel {
 public:
  LindbladKernel(const SystemParams& params, const SpaceDescriptor& space);

  const SystemParams& params() const { return params_; }
  const SpaceDescriptor& space() const { return space_; }
  int dim() const { return space_.total_dim(); }

  // out = K in, column by column. `in` and `out` hold `ncols` contiguous
  // columns of length dim() and must not alias.
  void apply_effective(const Controls& controls, const Complex* in, Complex* out, int ncols) const;
  void apply_effective(const Controls& controls, const Vector& in, Vector& out) const;

  // drho = -i (K rho - rho K^dag) + sum_c L_c rho L_c^dag, assuming rho Hermitian.
  void lindblad(const Controls& controls, const Matrix& rho, Matrix& drho) const;

  // Non-Hermitian Schrodinger right-hand side -i K psi.
  void schrodinger(const Controls& controls, const Vector& psi, Vector& dpsi) const;

  // out = L_c in (unnormalised).
  void apply_jump(Channel channel, const Vector& in, Vector& out) const;
  // ||L_c psi||^2
  double jump_rate(Channel channel, const Vector& psi) const;

 private:
  SystemParams params_;
  SpaceDescriptor space_;
  std::vector<double> sqrt_n_;
};

}  // namespace cqed
