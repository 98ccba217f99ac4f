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
#include <vector>

namespace cqed {

struct ValidationReport {
  std::string case_id;
  double max_error = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double runtime_s = 0.0;
  std::string detail;
};

// Closed-form regression cases for the master-equation integrator:
//   cavity-decay   <a^dag a>(t) = n0 exp(-2 kappa t)           (relative, 1e-6)
//   driven-cavity  <a^dag a> -> |lambda / kappa|^2             (relative, 1e-6)
//   vacuum-rabi    P_e(t) = sin^2(g t), period pi / g          (1e-4)
ValidationReport validate_analytic(const std::string& case_id);

const std::vector<std::string>& analytic_case_ids();

}  // namespace cqed
