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

#ifndef MCURVE_CORE_ORBITS_HPP_
#define MCURVE_CORE_ORBITS_HPP_

#include <utility>
#include <vector>

#include "potential.hpp"
#include "rational.hpp"
#include "sft.hpp"

namespace mcurve {

// A closed edge path, i.e. a periodic point together with its declared
// period (which may be a multiple of the least period).
struct Cycle {
  int start_state = 0;
  std::vector<int> edges;

  int period() const { return static_cast<int>(edges.size()); }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

bool IsClosedPath(const Sft& sft, const Cycle& c);
// Exact sum; a double-only potential contributes its exact binary values.
Rational BirkhoffSum(const Cycle& c, const EdgePotential& psi);
Rational BirkhoffMean(const Cycle& c, const EdgePotential& psi);
Cycle Repeat(const Cycle& c, int times);
// Both cycles must start at the same state.
Cycle Concatenate(const Cycle& a, const Cycle& b);
Cycle Rotate(const Sft& sft, const Cycle& c, int shift);
std::vector<int> StatesOf(const Sft& sft, const Cycle& c);

struct OrbitLimits {
  int enumerate_cap = 24;
  // Refuse to materialize more periodic points than this.
  long max_points = 20000000;
  int count_cap = 40;
  // Bound on polynomial degree times n in count_window.
  long max_coefficients = 50000000;
};

// Every periodic point of period n, as closed paths grouped by start state.
std::vector<Cycle> EnumerateCycles(const Sft& sft, int n, const OrbitLimits& limits = {});

// Coefficients of tr(M(z)^n) for n = 1..n_max, where M(z) carries
// z^(D psi(e) - low) on each edge. coefficient(n)[k] is the number of
// periodic points of period n whose scaled sum equals k + n*low.
class TracePolynomials {
 public:
  TracePolynomials(const Sft& sft, const EdgePotential& psi, int n_max, const OrbitLimits& limits = {});

  int n_max() const { return static_cast<int>(coefficients_.size()) - 1; }
  const Integer& denominator() const { return denominator_; }
  long low() const { return low_; }
  const std::vector<Integer>& coefficients(int n) const;

  // Points with psi^n equal to the given sum.
  Integer CountSum(int n, const Rational& sum) const;
  // Points with |psi^n/n - eta| < delta; delta = 0 means psi^n = n eta.
  Integer CountWindow(int n, const Rational& eta, const Rational& delta) const;
  Integer Total(int n) const;

 private:
  Integer denominator_ = 1;
  long low_ = 0;
  std::vector<std::vector<Integer>> coefficients_;
};

struct WindowCount {
  int n = 0;
  Rational eta;
  Rational delta;
  Integer count;
  Integer total;
};

WindowCount CountWindow(const Sft& sft, const EdgePotential& psi, int n, const Rational& eta, const Rational& delta,
                        const OrbitLimits& limits = {});

struct PeriodGcd {
  long d = 0;
  std::vector<int> witnesses;
  int n_max = 0;
};

// gcd of the n <= n_max admitting a periodic point with psi^n = w n. The
// true value over all n divides the reported one.
PeriodGcd DPsiW(const Sft& sft, const EdgePotential& psi, const Rational& w, int n_max,
                const OrbitLimits& limits = {});

struct GrowthRow {
  int n = 0;
  Rational delta;
  Integer count;
  double log_rate = 0.0;  // (1/n) log count, -inf when empty
};

std::vector<GrowthRow> EmpiricalGrowth(const Sft& sft, const EdgePotential& psi, const Rational& eta,
                                       const std::vector<std::pair<int, Rational>>& schedule,
                                       const OrbitLimits& limits = {});

double LogInteger(const Integer& z);

}  // namespace mcurve

#endif  // MCURVE_CORE_ORBITS_HPP_
