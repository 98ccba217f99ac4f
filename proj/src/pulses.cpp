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

#include "cqed/pulses.hpp"

#include <cmath>
#include <numbers>

#include "cqed/errors.hpp"

namespace cqed {

namespace {

double gaussian_amplitude(double t, double center, double width) {
  const double x = (t - center) / width;
  return std::exp(-2.0 * std::numbers::ln2 * x * x);
}

}  // namespace

double PulseSchedule::omega1(double t) const {
  if (!config_.omega1_on) return 0.0;
  if (t <= 0.0) return config_.omega_max;
  if (t >= config_.edge_time) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * t / config_.edge_time);
  return config_.omega_max * c * c;
}

double PulseSchedule::omega2(double t) const {
  if (!config_.omega2_on) return 0.0;
  const double s = t - config_.delta_t;
  if (s <= 0.0) return 0.0;
  if (s >= config_.edge_time) return config_.omega_max;
  const double r = std::sin(0.5 * std::numbers::pi * s / config_.edge_time);
  return config_.omega_max * r * r;
}

Complex PulseSchedule::lambda1(double t) const {
  if (!config_.lambda1_on) return {0.0, 0.0};
  return config_.lambda_peak * gaussian_amplitude(t, config_.t1, config_.lambda_width);
}

Complex PulseSchedule::lambda2(double t) const {
  if (!config_.lambda2_on) return {0.0, 0.0};
  return config_.lambda2_peak * std::polar(1.0, config_.theta) *
         gaussian_amplitude(t, lambda2_center(), config_.lambda2_width);
}

Controls PulseSchedule::controls(double t) const {
  return {omega(t), config_.omega_phase, lambda(t)};
}

PulseSchedule make_schedule(const ScheduleConfig& config) {
  const double timings[] = {config.t1,        config.delta_t,    config.theta,
                            config.omega_max, config.edge_time,  config.lambda_width,
                            config.lambda2_offset, config.omega_phase, config.lambda2_width};
  for (double v : timings) {
    if (!std::isfinite(v)) throw InvalidArgument("pulse timings must be finite");
  }
  if (config.edge_time <= 0.0) throw InvalidArgument("edge_time must be > 0");
  if (config.lambda_width <= 0.0 || config.lambda2_width <= 0.0) {
    throw InvalidArgument("lambda pulse widths must be > 0");
  }
  if (config.omega_max < 0.0) throw InvalidArgument("omega_max must be >= 0");

  PulseSchedule schedule(config);
  if (config.lambda2_on) {
    const double half = 2.0 * config.lambda2_width;
    const double lo = schedule.lambda2_center() - half;
    const double hi = schedule.lambda2_center() + half;
    if (hi < config.delta_t || lo > config.delta_t + config.edge_time) {
      schedule.warnings_.push_back(
          "lambda_2 pulse does not overlap the rising edge of Omega_2");
    }
  }
  return schedule;
}

double lambda_peak_for(double n_bar, double kappa_in, double width) {
  if (n_bar < 0.0) throw InvalidArgument("n_bar must be >= 0");
  if (width <= 0.0) throw InvalidArgument("pulse width must be > 0");
  // Gaussian flux with FWHM `width` integrating to n_bar.
  const double peak_flux = n_bar * std::sqrt(4.0 * std::numbers::ln2 / std::numbers::pi) / width;
  return std::sqrt(2.0 * kappa_in * peak_flux);
}

}  // namespace cqed
