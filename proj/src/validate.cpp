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

#include "cqed/validate.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cqed/errors.hpp"
#include "cqed/master.hpp"

namespace cqed {

namespace {

SystemParams bare_cavity() {
  SystemParams p;
  p.g = 0.0;
  p.gamma_a = 0.0;
  p.gamma_b = 0.0;
  return p;
}

ValidationReport cavity_decay() {
  const SystemParams p = bare_cavity();
  const SpaceDescriptor space = build_space(p.fock_cutoff);
  const int n0 = 2;
  const double kappa = p.kappa();
  const Controls none{};
  const auto run = integrate_master(QuantumState::basis(space, Level::b, n0),
                                    [&](double) { return none; }, p, 0.0, 2.0 / kappa);
  double worst = 0.0;
  for (std::size_t i = 0; i < run.series.size(); ++i) {
    const double expected = n0 * std::exp(-2.0 * kappa * run.series.t[i]);
    worst = std::max(worst, std::abs(run.series.n_cav[i] - expected) / expected);
  }
  return {"cavity-decay", worst, 1.0e-6, worst < 1.0e-6, 0.0, "max relative error of <a^dag a>(t)"};
}

ValidationReport driven_cavity() {
  const SystemParams p = bare_cavity();
  const SpaceDescriptor space = build_space(p.fock_cutoff);
  const double kappa = p.kappa();
  const Controls drive{0.0, 0.0, Complex(0.2 * kappa, 0.0)};
  const double steady = std::norm(drive.lambda) / (kappa * kappa);
  const auto run = integrate_master(QuantumState::basis(space, Level::b, 0),
                                    [&](double) { return drive; }, p, 0.0, 20.0 / kappa);
  // Transient (1 - e^{-kappa t})^2 |lambda/kappa|^2 from t = 1/kappa on, and the end point.
  double worst = 0.0;
  for (std::size_t i = 0; i < run.series.size(); ++i) {
    const double t = run.series.t[i];
    if (t < 1.0 / kappa) continue;
    const double s = 1.0 - std::exp(-kappa * t);
    const double expected = steady * s * s;
    worst = std::max(worst, std::abs(run.series.n_cav[i] - expected) / expected);
  }
  const double final_error = std::abs(run.series.n_cav.back() - steady) / steady;
  worst = std::max(worst, final_error);
  return {"driven-cavity", worst, 1.0e-6, worst < 1.0e-6, 0.0,
          "max relative error vs (1 - e^{-kappa t})^2 |lambda/kappa|^2"};
}

ValidationReport vacuum_rabi() {
  SystemParams p;
  p.kappa_in = p.kappa_out = p.kappa_loss = 0.0;
  p.gamma_a = p.gamma_b = 0.0;
  p.delta = 0.0;
  const SpaceDescriptor space = build_space(p.fock_cutoff);
  const double g = p.g;
  const double period = std::numbers::pi / g;
  IntegrationOptions opts;
  opts.sample_dt = period / 200.0;
  const Controls none{};
  const auto run = integrate_master(QuantumState::basis(space, Level::b, 1),
                                    [&](double) { return none; }, p, 0.0, 4.0 * period, opts);
  double worst = 0.0;
  const auto& t = run.series.t;
  const auto& pe = run.series.P_e;
  for (std::size_t i = 0; i < run.series.size(); ++i) {
    const double s = std::sin(g * t[i]);
    worst = std::max(worst, std::abs(pe[i] - s * s));
  }
  // Period from parabolic refinement of the P_e maxima.
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < pe.size(); ++i) {
    if (pe[i] >= pe[i - 1] && pe[i] > pe[i + 1]) {
      const double denom = pe[i - 1] - 2.0 * pe[i] + pe[i + 1];
      const double shift = denom != 0.0 ? 0.5 * (pe[i - 1] - pe[i + 1]) / denom : 0.0;
      peaks.push_back(t[i] + shift * opts.sample_dt);
    }
  }
  double period_error = 1.0;
  if (peaks.size() >= 2) {
    const double measured = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
    period_error = std::abs(measured - period) / period;
  }
  worst = std::max(worst, period_error);
  std::ostringstream detail;
  detail << "max |P_e - sin^2(g t)| and relative period error (" << peaks.size() << " maxima)";
  return {"vacuum-rabi", worst, 1.0e-4, worst < 1.0e-4, 0.0, detail.str()};
}

}  // namespace

const std::vector<std::string>& analytic_case_ids() {
  static const std::vector<std::string> ids{"cavity-decay", "driven-cavity", "vacuum-rabi"};
  return ids;
}

ValidationReport validate_analytic(const std::string& case_id) {
  const auto start = std::chrono::steady_clock::now();
  ValidationReport report;
  if (case_id == "cavity-decay") {
    report = cavity_decay();
  } else if (case_id == "driven-cavity") {
    report = driven_cavity();
  } else if (case_id == "vacuum-rabi") {
    report = vacuum_rabi();
  } else {
    throw InvalidArgument("unknown validation case '" + case_id + "'");
  }
  report.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace cqed
