// Copyright 2026 The mcurve Authors
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


#ifndef MCURVE_CORE_VERIFY_HPP_
#define MCURVE_CORE_VERIFY_HPP_

#include <string>
#include <vector>

#include "automaton.hpp"

namespace mcurve {

struct VerifyOptions {
  double tolerance = 1e-6;
  int curve_samples = 9;
  // Longest cycles enumerated for brute-force cross-checks.
  int cycle_length = 6;
  // Periods checked against exact trace counts.
  int count_length = 10;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  int component = -1;

  bool passed() const;
};

// Runs the invariant suite of every module on the maximal component of an
// automaton. Checks that do not apply (for instance the free-group contract
// without generator metadata) are skipped rather than reported.
VerifyReport VerifyAutomaton(const DualMetricAutomaton& automaton, const VerifyOptions& options = {});

}  // namespace mcurve

#endif  // MCURVE_CORE_VERIFY_HPP_
