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

#include "cqed/hilbert.hpp"

#include <cmath>
#include <string>

#include "cqed/errors.hpp"

namespace cqed {

Level level_from_label(char label) {
  switch (label) {
    case 'a':
      return Level::a;
    case 'b':
      return Level::b;
    case 'e':
      return Level::e;
    default:
      throw InvalidArgument(std::string("invalid level label '") + label + "'");
  }
}

char level_label(Level level) {
  switch (level) {
    case Level::a:
      return 'a';
    case Level::b:
      return 'b';
    case Level::e:
      return 'e';
  }
  throw InvalidArgument("invalid level");
}

SpaceDescriptor build_space(int fock_cutoff) {
  if (fock_cutoff < 1) {
    throw InvalidArgument("fock_cutoff must be >= 1, got " + std::to_string(fock_cutoff));
  }
  return SpaceDescriptor{fock_cutoff};
}

Operator identity(const SpaceDescriptor& space) {
  return Operator::Identity(space.total_dim(), space.total_dim());
}

Operator annihilation(const SpaceDescriptor& space) {
  Operator a = Operator::Zero(space.total_dim(), space.total_dim());
  for (int l = 0; l < SpaceDescriptor::atom_dim; ++l) {
    const auto level = static_cast<Level>(l);
    for (int n = 1; n <= space.fock_cutoff; ++n) {
      a(space.index(level, n - 1), space.index(level, n)) = std::sqrt(static_cast<double>(n));
    }
  }
  return a;
}

Operator number_operator(const SpaceDescriptor& space) {
  Operator num = Operator::Zero(space.total_dim(), space.total_dim());
  for (int i = 0; i < space.total_dim(); ++i) {
    num(i, i) = static_cast<double>(space.decode(i).second);
  }
  return num;
}

Operator atomic_projector_and_flips(const SpaceDescriptor& space, Level i, Level j) {
  Operator s = Operator::Zero(space.total_dim(), space.total_dim());
  for (int n = 0; n <= space.fock_cutoff; ++n) {
    s(space.index(i, n), space.index(j, n)) = 1.0;
  }
  return s;
}

Operator atomic_projector_and_flips(const SpaceDescriptor& space, char i, char j) {
  return atomic_projector_and_flips(space, level_from_label(i), level_from_label(j));
}

QuantumState QuantumState::ket(const SpaceDescriptor& space, Vector amplitudes) {
  if (amplitudes.size() != space.total_dim()) {
    throw InvalidArgument("ket dimension " + std::to_string(amplitudes.size()) +
                          " does not match space dimension " +
                          std::to_string(space.total_dim()));
  }
  return QuantumState(Kind::ket, space, std::move(amplitudes), Matrix());
}

QuantumState QuantumState::density(const SpaceDescriptor& space, Matrix rho) {
  if (rho.rows() != space.total_dim() || rho.cols() != space.total_dim()) {
    throw InvalidArgument("density matrix shape does not match space dimension " +
                          std::to_string(space.total_dim()));
  }
  return QuantumState(Kind::density, space, Vector(), std::move(rho));
}

QuantumState QuantumState::basis(const SpaceDescriptor& space, Level level, int n) {
  if (n < 0 || n > space.fock_cutoff) {
    throw InvalidArgument("photon number " + std::to_string(n) + " outside Fock cutoff");
  }
  Vector psi = Vector::Zero(space.total_dim());
  psi(space.index(level, n)) = 1.0;
  return ket(space, std::move(psi));
}

QuantumState QuantumState::maximally_mixed(const SpaceDescriptor& space) {
  const int d = space.total_dim();
  return density(space, Matrix::Identity(d, d) / static_cast<double>(d));
}

const Vector& QuantumState::amplitudes() const {
  if (kind_ != Kind::ket) throw InvalidArgument("state is not a ket");
  return psi_;
}

const Matrix& QuantumState::rho() const {
  if (kind_ != Kind::density) throw InvalidArgument("state is not a density matrix");
  return rho_;
}

QuantumState QuantumState::to_density() const {
  if (kind_ == Kind::density) return *this;
  return density(space_, psi_ * psi_.adjoint());
}

QuantumState QuantumState::normalized() const {
  if (kind_ == Kind::ket) {
    const double norm = psi_.norm();
    if (norm == 0.0) throw InvalidArgument("cannot normalize the zero ket");
    return ket(space_, psi_ / norm);
  }
  const double tr = trace();
  if (tr == 0.0) throw InvalidArgument("cannot normalize a traceless density matrix");
  return density(space_, rho_ / tr);
}

double QuantumState::trace() const {
  if (kind_ == Kind::ket) return psi_.squaredNorm();
  return rho_.trace().real();
}

double QuantumState::hermiticity_residual() const {
  if (kind_ == Kind::ket) return 0.0;
  return max_abs_antihermitian(rho_);
}

double QuantumState::min_eigenvalue() const {
  if (kind_ == Kind::ket) return 0.0;
  const Matrix herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Expectation expectation(const QuantumState& state, const Operator& op) {
  if (op.rows() != state.dim() || op.cols() != state.dim()) {
    throw InvalidArgument("operator dimension " + std::to_string(op.rows()) +
                          " does not match state dimension " + std::to_string(state.dim()));
  }
  Complex value;
  if (state.is_ket()) {
    value = state.amplitudes().dot(op * state.amplitudes());
  } else {
    value = (state.rho() * op).trace();
  }
  return {value.real(), value.imag()};
}

GroundPopulations ground_populations(const SpaceDescriptor& space, const Matrix& rho) {
  GroundPopulations p;
  for (int n = 0; n <= space.fock_cutoff; ++n) {
    p.a += rho(space.index(Level::a, n), space.index(Level::a, n)).real();
    p.b += rho(space.index(Level::b, n), space.index(Level::b, n)).real();
    p.e += rho(space.index(Level::e, n), space.index(Level::e, n)).real();
  }
  return p;
}

GroundPopulations ground_populations(const SpaceDescriptor& space, const Vector& psi) {
  GroundPopulations p;
  for (int n = 0; n <= space.fock_cutoff; ++n) {
    p.a += std::norm(psi(space.index(Level::a, n)));
    p.b += std::norm(psi(space.index(Level::b, n)));
    p.e += std::norm(psi(space.index(Level::e, n)));
  }
  return p;
}

GroundPopulations ground_populations(const QuantumState& state) {
  if (state.is_ket()) return ground_populations(state.space(), state.amplitudes());
  return ground_populations(state.space(), state.rho());
}

double max_abs_antihermitian(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace cqed
