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

#ifndef MCURVE_CORE_DIOPHANTINE_HPP_
#define MCURVE_CORE_DIOPHANTINE_HPP_

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "orbits.hpp"
#include "potential.hpp"
#include "rational.hpp"
#include "sft.hpp"

namespace mcurve {

// Extreme cycle means with simple witnesses, both repeatable to the common
// period l.
struct MeanCycleExtremes {
  Rational alpha_min;
  Rational alpha_max;
  Cycle min_witness;
  Cycle max_witness;
  int l = 0;
};

MeanCycleExtremes ExtremalMeans(const Sft& irreducible, const EdgePotential& psi);

// A real target, known either exactly or through rational enclosures whose
// width shrinks to zero as the depth grows.
class EtaTarget {
 public:
  using Encloser = std::function<std::pair<Rational, Rational>(int depth)>;

  static EtaTarget Exact(const Rational& q);
  // The exact binary value of a double.
  static EtaTarget FromDouble(double x);
  // Irrational with partial quotients a0; a1, a2, ... (all ai >= 1 for i >= 1).
  static EtaTarget FromContinuedFraction(std::function<Integer(int)> quotient, std::string label = "cf");
  // p + q sqrt(d) with d a positive non-square.
  static EtaTarget Surd(const Rational& p, const Rational& q, const Integer& d);
  static EtaTarget GoldenRatio();

  // scale * eta + shift.
  EtaTarget Affine(const Rational& scale, const Rational& shift) const;

  bool is_rational() const { return rational_; }
  const Rational& rational() const { return exact_; }
  double approx() const { return approx_; }
  const std::string& label() const { return label_; }
  std::pair<Rational, Rational> Enclose(int depth) const;

 private:
  bool rational_ = true;
  Rational exact_;
  Encloser enclose_;
  double approx_ = 0.0;
  std::string label_;
};

struct HurwitzTriple {
  Integer n;
  Integer a;  // weight on s
  Integer b;  // weight on t
  // Upper bound on |(a s + b t)/n - eta|, exact.
  Rational error_bound;
};

// Convergent-based solutions of |(a s + b t)/n - eta| <= (t - s)/(sqrt5 n^2),
// n strictly increasing. Multiples of an exact hit continue the sequence.
std::vector<HurwitzTriple> HurwitzApprox(const Rational& s, const Rational& t, const EtaTarget& eta, int count);

struct BridgedOrbits {
  MeanCycleExtremes extremes;
  int primitivity_index = 0;
  int state_count = 0;
  // x starts at the alpha_max witness state and has the lower mean; y starts
  // at the alpha_min witness state.
  Cycle x;
  Cycle y;
  Rational mean_x;
  Rational mean_y;
  int bridge_out = 0;  // length of the path from x's start to y's start
  int bridge_back = 0;
  int repeats = 0;
  // Period at most 2M(1 + k^2).
  bool within_period_bound = false;
};

BridgedOrbits BridgeOrbits(const Sft& mixing, const EdgePotential& psi);

// C = numerator / sqrt(5).
struct ShrinkConstant {
  Rational numerator;
  double value() const;
};

// 4 M^2 (1 + k^2) (alpha_max - alpha_min) / sqrt5, the constant certified by
// this module.
ShrinkConstant ModuleShrinkConstant(int m, int k, const Rational& spread);
// The same with (1 + k^2)^2.
ShrinkConstant ProvenShrinkConstant(int m, int k, const Rational& spread);

struct ShrinkCertificate {
  double eta = 0.0;
  // low^low_copies followed by high^high_copies; both start at the same state.
  Cycle low;
  Cycle high;
  Integer low_copies;
  Integer high_copies;
  Integer period;
  Rational mean;
  // Exact upper bound on |mean - eta|.
  Rational error_bound;
  ShrinkConstant constant;
  // error_bound <= constant / period^2, decided exactly.
  bool satisfied = false;
  int interval = 0;

  Cycle Materialize(long max_edges = 10000000) const;
  // Re-sums the potential along the pieces and compares with mean.
  bool SelfCheck(const Sft& sft, const EdgePotential& psi) const;
};

struct ShrinkReport {
  BridgedOrbits bridge;
  ShrinkConstant constant;
  // Power used to reach a mixing shift (1 when already mixing).
  int power = 1;
  std::vector<ShrinkCertificate> certificates;
};

// Potential on a power shift: each edge carries the sum over its source block.
EdgePotential LiftToPower(const PowerShift& power, const EdgePotential& psi);
Cycle LowerFromPower(const PowerShift& power, const Sft& original, const Cycle& c);

ShrinkReport ShrinkOrbits(const Sft& irreducible, const EdgePotential& psi, const EtaTarget& eta, int count);

// A cycle whose mean is exactly p/q.
Cycle RationalOrbit(const Sft& irreducible, const EdgePotential& psi, const Integer& p, const Integer& q,
                    long max_edges = 10000000);

}  // namespace mcurve

#endif  // MCURVE_CORE_DIOPHANTINE_HPP_
