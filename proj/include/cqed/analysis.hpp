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

#include <functional>
#include <vector>

#include "cqed/hilbert.hpp"
#include "cqed/master.hpp"
#include "cqed/trajectories.hpp"

namespace cqed {

// Trapezoidal integral of flux_out over [start, start + length]. The series is
// linearly interpolated at window edges falling between samples, which makes
// the count additive over adjacent windows.
double window_count(const TimeSeries& series, double start, double length);

// Integral of an arbitrary sampled track, same rules as window_count.
double integrate_window(const std::vector<double>& t, const std::vector<double>& y, double start,
                        double end);

struct FringeFit {
  double A = 0.0;
  double v = 0.0;
  double phi = 0.0;
  double sigma_v = 0.0;
  double sigma_phi = 0.0;
  double rms_residual = 0.0;
};

// Linear least squares of values = A + B cos(theta) + C sin(theta);
// v = sqrt(B^2 + C^2) / A, phi = atan2(C, B).
FringeFit fit_visibility(const std::vector<double>& theta, const std::vector<double>& values);

struct PartitionResult {
  double p_c = 0.0;
  double p_i_component = 0.0;
  double se_c = 0.0;
  double se_i = 0.0;
  double se_total = 0.0;
  int n_traj = 0;

  double total() const { return p_c + p_i_component; }
};

// Each trajectory contributes its final F=3 population, to p_c if it had no
// spontaneous jump and to p_i_component otherwise.
PartitionResult partition_coherent(const TrajectoryEnsemble& ensemble);

using Envelope = std::function<Complex(double)>;

struct SampledEnvelope {
  std::vector<double> t;
  std::vector<Complex> values;
};

// 2 |int a* b| / (int |a|^2 + int |b|^2) over [start, end].
double overlap_visibility(const Envelope& alpha, const Envelope& beta, double start, double end);
double overlap_visibility(const SampledEnvelope& alpha, const SampledEnvelope& beta, double start,
                          double end);

}  // namespace cqed
