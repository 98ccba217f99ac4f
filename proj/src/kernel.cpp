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

#include "cqed/kernel.hpp"

#include <cmath>

#include "cqed/errors.hpp"

namespace cqed {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

LindbladKernel::LindbladKernel(const SystemParams& params, const SpaceDescriptor& space)
    : params_(params), space_(space) {
  params_.validate();
  if (space.fock_cutoff != params.fock_cutoff) {
    throw InvalidArgument("space and params disagree on fock_cutoff");
  }
  sqrt_n_.resize(space.fock_dim() + 1);
  for (int n = 0; n <= space.fock_dim(); ++n) sqrt_n_[n] = std::sqrt(static_cast<double>(n));
}

void LindbladKernel::apply_effective(const Controls& controls, const Complex* in, Complex* out,
                                     int ncols) const {
  const int nf = space_.fock_dim();
  const int top = space_.fock_cutoff;
  const int d = dim();
  const double kappa = params_.kappa();
  const double g = params_.g;
  const Complex drive = 0.5 * controls.omega * std::polar(1.0, controls.omega_phase);
  const Complex drive_c = std::conj(drive);
  const Complex lam = controls.lambda;
  const Complex lam_c = std::conj(lam);
  const Complex diag_e_base(-params_.delta, -params_.gamma());
  const double* sq = sqrt_n_.data();

  for (int col = 0; col < ncols; ++col) {
    const Complex* x_a = in + col * d;
    const Complex* x_b = x_a + nf;
    const Complex* x_e = x_b + nf;
    Complex* y_a = out + col * d;
    Complex* y_b = y_a + nf;
    Complex* y_e = y_b + nf;
    for (int n = 0; n <= top; ++n) {
      const Complex loss(0.0, -kappa * n);
      Complex ya = (params_.delta2 + loss) * x_a[n] + drive_c * x_e[n];
      Complex yb = loss * x_b[n];
      Complex ye = (diag_e_base + loss) * x_e[n] + drive * x_a[n];
      if (n > 0) {
        const Complex up = lam * sq[n];
        ya += up * x_a[n - 1];
        yb += up * x_b[n - 1] + g * sq[n] * x_e[n - 1];
        ye += up * x_e[n - 1];
      }
      if (n < top) {
        const Complex down = lam_c * sq[n + 1];
        ya += down * x_a[n + 1];
        yb += down * x_b[n + 1];
        ye += down * x_e[n + 1] + g * sq[n + 1] * x_b[n + 1];
      }
      y_a[n] = ya;
      y_b[n] = yb;
      y_e[n] = ye;
    }
  }
}

void LindbladKernel::apply_effective(const Controls& controls, const Vector& in,
                                     Vector& out) const {
  out.resize(dim());
  apply_effective(controls, in.data(), out.data(), 1);
}

void LindbladKernel::lindblad(const Controls& controls, const Matrix& rho, Matrix& drho) const {
  const int d = dim();
  const int nf = space_.fock_dim();
  const int top = space_.fock_cutoff;
  drho.resize(d, d);
  apply_effective(controls, rho.data(), drho.data(), d);

  // drho currently holds K rho; form X + X^dag with X = -i K rho.
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i <= j; ++i) {
      const Complex xij = -kI * drho(i, j);
      const Complex xji = -kI * drho(j, i);
      const Complex v = xij + std::conj(xji);
      drho(i, j) = v;
      drho(j, i) = std::conj(v);
    }
  }
  for (int j = 0; j < d; ++j) drho(j, j) = Complex(drho(j, j).real(), 0.0);

  const double two_kappa = 2.0 * params_.kappa();
  if (two_kappa > 0.0) {
    const double* sq = sqrt_n_.data();
    for (int lj = 0; lj < 3; ++lj) {
      for (int m = 0; m < top; ++m) {
        const int col = lj * nf + m;
        const int src_col = col + 1;
        for (int li = 0; li < 3; ++li) {
          for (int n = 0; n < top; ++n) {
            drho(li * nf + n, col) +=
                two_kappa * sq[n + 1] * sq[m + 1] * rho(li * nf + n + 1, src_col);
          }
        }
      }
    }
  }
  const double two_gamma_a = 2.0 * params_.gamma_a;
  const double two_gamma_b = 2.0 * params_.gamma_b;
  const int ea = space_.index(Level::e, 0);
  const int aa = space_.index(Level::a, 0);
  const int ba = space_.index(Level::b, 0);
  for (int m = 0; m < nf; ++m) {
    for (int n = 0; n < nf; ++n) {
      const Complex src = rho(ea + n, ea + m);
      drho(aa + n, aa + m) += two_gamma_a * src;
      drho(ba + n, ba + m) += two_gamma_b * src;
    }
  }
}

void LindbladKernel::schrodinger(const Controls& controls, const Vector& psi, Vector& dpsi) const {
  dpsi.resize(dim());
  apply_effective(controls, psi.data(), dpsi.data(), 1);
  dpsi *= -kI;
}

void LindbladKernel::apply_jump(Channel channel, const Vector& in, Vector& out) const {
  const int nf = space_.fock_dim();
  const int top = space_.fock_cutoff;
  out = Vector::Zero(dim());
  double rate = 0.0;
  switch (channel) {
    case Channel::out:
      rate = params_.kappa_out;
      break;
    case Channel::in:
      rate = params_.kappa_in;
      break;
    case Channel::loss:
      rate = params_.kappa_loss;
      break;
    case Channel::spont_a:
    case Channel::spont_b: {
      const double amp =
          std::sqrt(2.0 * (channel == Channel::spont_a ? params_.gamma_a : params_.gamma_b));
      const Level target = channel == Channel::spont_a ? Level::a : Level::b;
      for (int n = 0; n < nf; ++n) {
        out(space_.index(target, n)) = amp * in(space_.index(Level::e, n));
      }
      return;
    }
  }
  const double amp = std::sqrt(2.0 * rate);
  for (int l = 0; l < 3; ++l) {
    for (int n = 0; n < top; ++n) {
      out(l * nf + n) = amp * sqrt_n_[n + 1] * in(l * nf + n + 1);
    }
  }
}

double LindbladKernel::jump_rate(Channel channel, const Vector& psi) const {
  const int nf = space_.fock_dim();
  switch (channel) {
    case Channel::spont_a:
    case Channel::spont_b: {
      double pe = 0.0;
      for (int n = 0; n < nf; ++n) pe += std::norm(psi(space_.index(Level::e, n)));
      return 2.0 * (channel == Channel::spont_a ? params_.gamma_a : params_.gamma_b) * pe;
    }
    default: {
      double photons = 0.0;
      for (int i = 0; i < dim(); ++i) photons += space_.decode(i).second * std::norm(psi(i));
      const double rate = channel == Channel::out  ? params_.kappa_out
                          : channel == Channel::in ? params_.kappa_in
                                                   : params_.kappa_loss;
      return 2.0 * rate * photons;
    }
  }
}

}  // namespace cqed
