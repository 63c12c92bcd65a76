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

#ifndef MCURVE_CORE_PERRON_HPP_
#define MCURVE_CORE_PERRON_HPP_

#include <span>
#include <vector>

#include "sft.hpp"

namespace mcurve {

struct PerronOptions {
  double rel_tol = 1e-12;
  long max_iterations = 1000000;
  bool need_left = true;
};

struct PerronResult {
  // log of the spectral radius of M with M_ij = sum over edges i->j of exp(w_e).
  double log_radius = 0.0;
  // Right and left Perron vectors, positive; right sums to one and
  // left is scaled so that <left, right> = 1.
  std::vector<double> right;
  std::vector<double> left;
  long iterations = 0;
};

// Shifted power iteration with a global log offset, so weights of magnitude
// in the hundreds neither overflow nor flush the matrix to zero. Stops when
// the Collatz-Wielandt bracket on the spectral radius is relatively tighter
// than rel_tol. Requires an irreducible shift.
PerronResult PerronLog(const Sft& irreducible, std::span<const double> log_weights,
                       const PerronOptions& options = {});

}  // namespace mcurve

#endif  // MCURVE_CORE_PERRON_HPP_
