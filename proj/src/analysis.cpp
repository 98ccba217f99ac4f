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


#include "cqed/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cqed/errors.hpp"

namespace cqed {

namespace {

// Integral of the linear interpolant of (t, y) over [lo, hi] within one
// sample interval [t0, t1].
template <class T>
T partial_trapezoid(double t0, double t1, const T& y0, const T& y1, double lo, double hi) {
  const double h = t1 - t0;
  auto at = [&](double s) { return y0 + (y1 - y0) * ((s - t0) / h); };
  return (at(lo) + at(hi)) * (0.5 * (hi - lo));
}

template <class T>
T integrate_sampled(const std::vector<double>& t, const std::vector<T>& y, double start,
                    double end) {
  if (t.size() != y.size()) throw InvalidArgument("track length does not match the time grid");
  if (t.size() < 2) throw InvalidArgument("need at least two samples to integrate");
  if (!(end >= start)) throw InvalidArgument("window end precedes its start");
  const double span = std::abs(t.back() - t.front());
  const double slack = 1.0e-9 * span;
  if (start < t.front() - slack || end > t.back() + slack) {
    throw InvalidArgument("window lies outside the sampled time grid");
  }
  start = std::max(start, t.front());
  end = std::min(end, t.back());
  T sum{};
  // First interval touching the window.
  auto it = std::upper_bound(t.begin(), t.end(), start);
  std::size_t i = it == t.begin() ? 1 : static_cast<std::size_t>(it - t.begin());
  if (i >= t.size()) i = t.size() - 1;
  for (; i < t.size(); ++i) {
    const double t0 = t[i - 1], t1 = t[i];
    if (t0 >= end) break;
    const double lo = std::max(t0, start);
    const double hi = std::min(t1, end);
    if (hi <= lo) continue;
    if (lo == t0 && hi == t1) {
      sum += (y[i - 1] + y[i]) * (0.5 * (t1 - t0));
    } else {
      sum += partial_trapezoid(t0, t1, y[i - 1], y[i], lo, hi);
    }
  }
  return sum;
}

}  // namespace

double integrate_window(const std::vector<double>& t, const std::vector<double>& y, double start,
                        double end) {
  return integrate_sampled(t, y, start, end);
}

double window_count(const TimeSeries& series, double start, double length) {
  if (!(length >= 0.0)) throw InvalidArgument("window length must be >= 0");
  return integrate_sampled(series.t, series.flux_out, start, start + length);
}

FringeFit fit_visibility(const std::vector<double>& theta, const std::vector<double>& values) {
  const auto n = theta.size();
  if (n != values.size()) throw InvalidArgument("theta and values differ in length");
  if (n < 4) throw InvalidArgument("a fringe fit needs at least 4 points");
  const auto [lo, hi] = std::minmax_element(theta.begin(), theta.end());
  const double span = (*hi - *lo) * static_cast<double>(n) / static_cast<double>(n - 1);
  if (span < 2.0 * std::numbers::pi * (1.0 - 1.0e-9)) {
    throw InvalidArgument("phase grid must cover a full period");
  }

  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (std::size_t k = 0; k < n; ++k) {
    X(k, 0) = 1.0;
    X(k, 1) = std::cos(theta[k]);
    X(k, 2) = std::sin(theta[k]);
    y(k) = values[k];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < 3) throw DegenerateFit("phase grid does not determine a cosine");
  const Eigen::Vector3d beta = qr.solve(y);
  const double A = beta(0), B = beta(1), C = beta(2);
  if (!(A > 0.0)) throw DegenerateFit("fitted offset A <= 0");

  const Eigen::VectorXd resid = y - X * beta;
  const double rss = resid.squaredNorm();
  const double dof = static_cast<double>(n) - 3.0;
  const Eigen::Matrix3d cov = (rss / dof) * (X.transpose() * X).inverse();

  FringeFit fit;
  fit.A = A;
  const double R = std::hypot(B, C);
  fit.v = std::min(R / A, 1.0);
  fit.phi = R > 0.0 ? std::atan2(C, B) : 0.0;
  fit.rms_residual = std::sqrt(rss / static_cast<double>(n));
  if (R > 0.0) {
    const Eigen::Vector3d gv(-R / (A * A), B / (A * R), C / (A * R));
    const Eigen::Vector3d gp(0.0, -C / (R * R), B / (R * R));
    fit.sigma_v = std::sqrt(std::max(0.0, gv.dot(cov * gv)));
    fit.sigma_phi = std::sqrt(std::max(0.0, gp.dot(cov * gp)));
  } else {
    fit.sigma_v = std::sqrt(std::max(0.0, cov(1, 1) + cov(2, 2))) / A;
    fit.sigma_phi = std::numeric_limits<double>::infinity();
  }
  return fit;
}

PartitionResult partition_coherent(const TrajectoryEnsemble& ensemble) {
  const auto n = ensemble.records.size();
  if (n == 0) throw InvalidArgument("empty trajectory ensemble");
  std::vector<double> wc(n, 0.0), wi(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& rec = ensemble.records[k];
    const bool spont = std::any_of(rec.jumps.begin(), rec.jumps.end(), [](const JumpRecord& j) {
      return j.channel == Channel::spont_a || j.channel == Channel::spont_b;
    });
    (spont ? wi : wc)[k] = rec.final.a;
  }
  auto mean_se = [n](const std::vector<double>& w, double& se) {
    double m = 0.0;
    for (double x : w) m += x;
    m /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : w) ss += (x - m) * (x - m);
    se = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    return m;
  };
  PartitionResult out;
  out.n_traj = static_cast<int>(n);
  out.p_c = mean_se(wc, out.se_c);
  out.p_i_component = mean_se(wi, out.se_i);
  std::vector<double> wt(n);
  for (std::size_t k = 0; k < n; ++k) wt[k] = wc[k] + wi[k];
  mean_se(wt, out.se_total);
  return out;
}

namespace {

double visibility_from(double cross, double na, double nb) {
  const double denom = na + nb;
  if (!(denom > 0.0)) throw InvalidArgument("both envelopes vanish on the window");
  return std::min(1.0, 2.0 * cross / denom);
}

}  // namespace

double overlap_visibility(const Envelope& alpha, const Envelope& beta, double start, double end) {
  if (!(end > start)) throw InvalidArgument("overlap window must have end > start");
  using boost::math::quadrature::gauss_kronrod;
  auto integrate = [&](auto f) {
    return gauss_kronrod<double, 61>::integrate(f, start, end, 12, 1.0e-13);
  };
  const double na = integrate([&](double t) { return std::norm(alpha(t)); });
  const double nb = integrate([&](double t) { return std::norm(beta(t)); });
  const double re = integrate([&](double t) { return (std::conj(alpha(t)) * beta(t)).real(); });
  const double im = integrate([&](double t) { return (std::conj(alpha(t)) * beta(t)).imag(); });
  return visibility_from(std::hypot(re, im), na, nb);
}

double overlap_visibility(const SampledEnvelope& alpha, const SampledEnvelope& beta, double start,
                          double end) {
  if (alpha.t != beta.t) throw InvalidArgument("envelopes must share a time grid");
  const auto n = alpha.t.size();
  std::vector<double> a2(n), b2(n);
  std::vector<Complex> ab(n);
  for (std::size_t k = 0; k < n; ++k) {
    a2[k] = std::norm(alpha.values[k]);
    b2[k] = std::norm(beta.values[k]);
    ab[k] = std::conj(alpha.values[k]) * beta.values[k];
  }
  const double na = integrate_sampled(alpha.t, a2, start, end);
  const double nb = integrate_sampled(alpha.t, b2, start, end);
  const Complex cross = integrate_sampled(alpha.t, ab, start, end);
  return visibility_from(std::abs(cross), na, nb);
}

}  // namespace cqed
