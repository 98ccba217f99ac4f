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

#include <string>

#include "cqed/params.hpp"
#include "cqed/pulses.hpp"

namespace cqed {

// How the intracavity photon content of the empty-cavity response is read.
//   transmitted: photons entering through M_in, integral of 2 (kappa_out + kappa_loss) <n> dt
//   peak:        maximum of <a^dag a>(t)
enum class CalibrationMode { transmitted, peak };

const char* calibration_mode_name(CalibrationMode mode);
CalibrationMode calibration_mode_from_name(const std::string& name);

struct CalibrationResult {
  SystemParams params;      // kappa_loss solved, kappa_in = kappa_out
  double lambda_peak = 0.0; // real peak of the lambda_1 amplitude
  double content = 0.0;     // intracavity content reached under the chosen reading
  double target = 0.0;
};

// Intracavity content of an empty cavity driven by a Gaussian lambda pulse
// carrying n_bar_in photons at M_in (classical amplitude, exact for a
// coherent drive).
double empty_cavity_content(const SystemParams& params, double n_bar_in, double width,
                            CalibrationMode mode);

// Keeps kappa = kappa_in + kappa_out + kappa_loss and solves for kappa_loss
// with symmetric mirrors such that the content equals cavity_fraction *
// n_bar_in. n_bar_in = 0 leaves params untouched.
CalibrationResult calibrate_input(double n_bar_in, const SystemParams& params, double width,
                                  CalibrationMode mode = CalibrationMode::transmitted,
                                  double cavity_fraction = 0.68 / 1.1);

}  // namespace cqed
