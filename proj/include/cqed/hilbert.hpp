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

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace cqed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense operator on the composite atom (x) cavity space. Rates are angular
// frequencies (rad/s); ladder and projector operators are dimensionless.
using Operator = Matrix;

// Atomic levels of the Lambda system. In cesium D2 terms: a = 6S1/2 F=3,
// b = 6S1/2 F=4, e = 6P3/2 F'=3. The cavity couples b <-> e, the classical
// field couples a <-> e.
enum class Level : int { a = 0, b = 1, e = 2 };

Level level_from_label(char label);
char level_label(Level level);

// Atom-major ordering: index = level * (fock_cutoff + 1) + n.
struct SpaceDescriptor {
  static constexpr int atom_dim = 3;
  int fock_cutoff = 1;

  int fock_dim() const { return fock_cutoff + 1; }
  int total_dim() const { return atom_dim * fock_dim(); }
  int index(Level level, int n) const { return static_cast<int>(level) * fock_dim() + n; }
  std::pair<Level, int> decode(int index) const {
    return {static_cast<Level>(index / fock_dim()), index % fock_dim()};
  }
  bool operator==(const SpaceDescriptor&) const = default;
};

SpaceDescriptor build_space(int fock_cutoff);

Operator identity(const SpaceDescriptor& space);
Operator annihilation(const SpaceDescriptor& space);
Operator number_operator(const SpaceDescriptor& space);
// sigma_ij = |i><j| (x) 1_cavity
Operator atomic_projector_and_flips(const SpaceDescriptor& space, Level i, Level j);
Operator atomic_projector_and_flips(const SpaceDescriptor& space, char i, char j);

class QuantumState {
 public:
  enum class Kind { ket, density };

  static QuantumState ket(const SpaceDescriptor& space, Vector amplitudes);
  static QuantumState density(const SpaceDescriptor& space, Matrix rho);
  static QuantumState basis(const SpaceDescriptor& space, Level level, int n);
  static QuantumState maximally_mixed(const SpaceDescriptor& space);

  Kind kind() const { return kind_; }
  bool is_ket() const { return kind_ == Kind::ket; }
  const SpaceDescriptor& space() const { return space_; }
  int dim() const { return space_.total_dim(); }

  const Vector& amplitudes() const;
  const Matrix& rho() const;

  // Ket -> |psi><psi|; densities are returned unchanged.
  QuantumState to_density() const;
  // Rescales a ket to unit norm or a density matrix to unit trace.
  QuantumState normalized() const;

  double trace() const;
  double hermiticity_residual() const;
  double min_eigenvalue() const;

 private:
  QuantumState(Kind kind, const SpaceDescriptor& space, Vector psi, Matrix rho)
      : kind_(kind), space_(space), psi_(std::move(psi)), rho_(std::move(rho)) {}

  Kind kind_;
  SpaceDescriptor space_;
  Vector psi_;
  Matrix rho_;
};

struct Expectation {
  double value = 0.0;
  // Imaginary part of <O>; only meaningful as a residue when O is Hermitian.
  double imag_residue = 0.0;
};

Expectation expectation(const QuantumState& state, const Operator& op);

struct GroundPopulations {
  double a = 0.0;
  double b = 0.0;
  double e = 0.0;
};

GroundPopulations ground_populations(const QuantumState& state);
// Same reduction on raw storage, used by the integrators.
GroundPopulations ground_populations(const SpaceDescriptor& space, const Matrix& rho);
GroundPopulations ground_populations(const SpaceDescriptor& space, const Vector& psi);

double max_abs_antihermitian(const Matrix& m);

}  // namespace cqed
