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

#include <algorithm>
#include <cmath>
#include <utility>

#include "cqed/errors.hpp"
#include "cqed/hilbert.hpp"

namespace cqed {

struct Tolerances {
  double atol = 1.0e-10;
  double rtol = 1.0e-8;
  // Step-size floor (s); an error-controlled step below it is an integration failure.
  double h_min = 1.0e-15;
  // Optional step ceiling (s); 0 means unlimited.
  double h_max = 0.0;
  // Attempted steps per integrator before giving up; 0 means unlimited.
  long max_attempts = 200000;
};

// Dormand-Prince 5(4) embedded pair with FSAL and elementary step control.
// State is any Eigen dense complex object; Rhs is callable as
// rhs(double t, const State& y, State& dy).
template <class State, class Rhs>
class DormandPrince {
 public:
  DormandPrince(Rhs rhs, const Tolerances& tol) : rhs_(std::move(rhs)), tol_(tol) {}

  void reset(double t, const State& y) {
    t_ = t;
    y_ = y;
    rhs_(t_, y_, k1_);
    if (h_ <= 0.0) h_ = initial_step();
  }

  double t() const { return t_; }
  const State& y() const { return y_; }
  const State& trial() const { return y_new_; }
  double step_size() const { return h_; }
  long accepted_steps() const { return accepted_; }

  // Computes a trial step of size h from the current point into trial() and
  // returns the scaled RMS error (<= 1 means acceptable).
  double attempt(double h) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    tmp_ = y_ + (h * a21) * k1_;
    rhs_(t_ + c2 * h, tmp_, k2_);
    tmp_ = y_ + h * (a31 * k1_ + a32 * k2_);
    rhs_(t_ + c3 * h, tmp_, k3_);
    tmp_ = y_ + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    rhs_(t_ + c4 * h, tmp_, k4_);
    tmp_ = y_ + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    rhs_(t_ + c5 * h, tmp_, k5_);
    tmp_ = y_ + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    rhs_(t_ + h, tmp_, k6_);
    y_new_ = y_ + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    rhs_(t_ + h, y_new_, k7_);
    err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    trial_h_ = h;

    double sum = 0.0;
    const auto n = y_.size();
    const auto* yo = y_.data();
    const auto* yn = y_new_.data();
    const auto* er = err_.data();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double scale = tol_.atol + tol_.rtol * std::max(std::abs(yo[i]), std::abs(yn[i]));
      const double r = std::abs(er[i]) / scale;
      sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(n));
  }

  // Commits the most recent attempt.
  void accept() {
    t_ += trial_h_;
    std::swap(y_, y_new_);
    std::swap(k1_, k7_);
    ++accepted_;
  }

  // Replaces the current point, e.g. after a quantum jump.
  void set_state(double t, const State& y) {
    t_ = t;
    y_ = y;
    rhs_(t_, y_, k1_);
  }

  // Step-size proposal after an attempt with error `err`.
  double propose(double h, double err) const {
    double factor;
    if (err == 0.0) {
      factor = 5.0;
    } else {
      factor = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    }
    double next = h * factor;
    if (tol_.h_max > 0.0) next = std::min(next, tol_.h_max);
    return next;
  }

  // One accepted adaptive step that does not pass t_end. Returns the step taken.
  double step(double t_end) {
    for (;;) {
      const double remaining = t_end - t_;
      const bool clamped = h_ >= remaining;
      const double h = clamped ? remaining : h_;
      if (tol_.max_attempts > 0 && ++attempts_ > tol_.max_attempts) {
        throw IntegrationFailure("step budget exhausted", t_);
      }
      const double err = attempt(h);
      if (err <= 1.0) {
        accept();
        // Keep the natural step when the last one was shortened to hit t_end.
        const double next = propose(h, err);
        h_ = clamped ? std::max(h_, next) : next;
        if (tol_.h_max > 0.0) h_ = std::min(h_, tol_.h_max);
        return h;
      }
      h_ = propose(h, err);
      if (h_ < tol_.h_min) {
        throw IntegrationFailure("step size underflow", t_);
      }
    }
  }

  void advance_to(double t_end) {
    while (t_ < t_end) {
      if (t_end - t_ <= 1.0e-12 * std::max(std::abs(t_end), 1.0e-9)) {
        // Remaining interval is round-off; snap.
        attempt(t_end - t_);
        accept();
        t_ = t_end;
        break;
      }
      step(t_end);
    }
    t_ = t_end;
  }

  void set_step_size(double h) { h_ = h; }

 private:
  double initial_step() const {
    const double y_norm = y_.norm();
    const double f_norm = k1_.norm();
    double h = 1.0e-12;
    if (f_norm > 0.0 && y_norm > 0.0) h = 0.01 * y_norm / f_norm;
    if (tol_.h_max > 0.0) h = std::min(h, tol_.h_max);
    return std::max(h, tol_.h_min);
  }

  Rhs rhs_;
  Tolerances tol_;
  double t_ = 0.0;
  double h_ = 0.0;
  double trial_h_ = 0.0;
  long attempts_ = 0;
  long accepted_ = 0;
  State y_, y_new_, tmp_, err_;
  State k1_, k2_, k3_, k4_, k5_, k6_, k7_;
};

template <class State, class Rhs>
DormandPrince<State, Rhs> make_dormand_prince(Rhs rhs, const Tolerances& tol) {
  return DormandPrince<State, Rhs>(std::move(rhs), tol);
}

}  // namespace cqed
