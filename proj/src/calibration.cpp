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


#include "cqed/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "cqed/errors.hpp"
#include "cqed/integrator.hpp"

namespace cqed {

const char* calibration_mode_name(CalibrationMode mode) {
  return mode == CalibrationMode::peak ? "peak" : "transmitted";
}

CalibrationMode calibration_mode_from_name(const std::string& name) {
  if (name == "transmitted") return CalibrationMode::transmitted;
  if (name == "peak") return CalibrationMode::peak;
  throw InvalidArgument("unknown calibration mode '" + name + "'");
}

double empty_cavity_content(const SystemParams& params, double n_bar_in, double width,
                            CalibrationMode mode) {
  const double kappa = params.kappa();
  if (!(kappa > 0.0)) throw InvalidArgument("calibration needs kappa > 0");
  if (n_bar_in == 0.0) return 0.0;
  const double peak = lambda_peak_for(n_bar_in, params.kappa_in, width);
  const double a = 2.0 * std::numbers::ln2 / (width * width);
  const double leak = 2.0 * (params.kappa_out + params.kappa_loss);

  // y = (alpha, integral of leak |alpha|^2); the pulse is centred on t = 0.
  auto rhs = [&](double t, const Vector& y, Vector& dy) {
    dy.resize(2);
    dy(0) = Complex(0.0, -peak * std::exp(-a * t * t)) - kappa * y(0);
    dy(1) = leak * std::norm(y(0));
  };
  Tolerances tol;
  tol.atol = 1.0e-14;
  tol.rtol = 1.0e-11;
  auto solver = make_dormand_prince<Vector>(rhs, tol);
  const double t0 = -5.0 * width;
  const double t1 = 5.0 * width + 40.0 / kappa;
  solver.reset(t0, Vector::Zero(2));
  if (mode == CalibrationMode::transmitted) {
    solver.advance_to(t1);
    return solver.y()(1).real();
  }
  const double dt = std::min(width, 1.0 / kappa) / 200.0;
  double best = 0.0;
  const auto steps = static_cast<std::int64_t>(std::ceil((t1 - t0) / dt));
  for (std::int64_t k = 1; k <= steps; ++k) {
    solver.advance_to(std::min(t1, t0 + static_cast<double>(k) * dt));
    best = std::max(best, std::norm(solver.y()(0)));
  }
  return best;
}

CalibrationResult calibrate_input(double n_bar_in, const SystemParams& params, double width,
                                  CalibrationMode mode, double cavity_fraction) {
  if (n_bar_in < 0.0) throw InvalidArgument("n_bar_in must be >= 0");
  params.validate();
  CalibrationResult result;
  result.params = params;
  if (n_bar_in == 0.0) return result;

  const double kappa = params.kappa();
  if (!(kappa > 0.0)) throw CalibrationFailure("calibration needs kappa > 0");
  const double target = cavity_fraction * n_bar_in;
  result.target = target;

  auto content_at = [&](double kappa_loss) {
    return empty_cavity_content(with_symmetric_mirrors(params, kappa, kappa_loss), n_bar_in,
                                width, mode);
  };
  const double f_lo = content_at(0.0) - target;
  // At kappa_loss = kappa nothing enters the cavity.
  const double f_hi = -target;
  if (f_lo < 0.0) {
    throw CalibrationFailure(std::string("no kappa_loss in [0, kappa] reaches intracavity content ") +
                             std::to_string(target) + " (" + calibration_mode_name(mode) +
                             " reading; lossless cavity gives " +
                             std::to_string(f_lo + target) + ")");
  }
  double kappa_loss = 0.0;
  if (f_lo > 0.0) {
    boost::uintmax_t iterations = 100;
    auto f = [&](double x) { return content_at(x) - target; };
    auto bracket = boost::math::tools::toms748_solve(
        f, 0.0, kappa, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(40), iterations);
    kappa_loss = 0.5 * (bracket.first + bracket.second);
  }
  result.params = with_symmetric_mirrors(params, kappa, kappa_loss);
  result.lambda_peak = lambda_peak_for(n_bar_in, result.params.kappa_in, width);
  result.content = content_at(kappa_loss);
  return result;
}

}  // namespace cqed
