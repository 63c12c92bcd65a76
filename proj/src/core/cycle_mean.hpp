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

#ifndef MCURVE_CORE_CYCLE_MEAN_HPP_
#define MCURVE_CORE_CYCLE_MEAN_HPP_

#include <vector>

#include "potential.hpp"
#include "rational.hpp"
#include "sft.hpp"

namespace mcurve {

// A simple cycle attaining an extreme mean. Edges are listed starting at
// the cycle's smallest state.
struct MeanCycle {
  Rational mean;
  int start_state = 0;
  std::vector<int> edges;
};

// Karp's algorithm in exact arithmetic. Double-only potentials are treated
// as their exact binary values. The shift must be irreducible.
MeanCycle MinMeanCycle(const Sft& irreducible, const EdgePotential& psi);
MeanCycle MaxMeanCycle(const Sft& irreducible, const EdgePotential& psi);

}  // namespace mcurve

#endif  // MCURVE_CORE_CYCLE_MEAN_HPP_
