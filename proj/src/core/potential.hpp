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

#ifndef MCURVE_CORE_POTENTIAL_HPP_
#define MCURVE_CORE_POTENTIAL_HPP_

#include <optional>
#include <span>
#include <vector>

#include "rational.hpp"
#include "sft.hpp"

namespace mcurve {

// A function constant on 2-cylinders: one value per edge of an Sft. The
// exact form, when present, is authoritative and the doubles are its
// rounding.
class EdgePotential {
 public:
  EdgePotential() = default;
  explicit EdgePotential(std::vector<double> values);
  explicit EdgePotential(std::vector<Rational> exact);

  static EdgePotential Constant(const Sft& sft, const Rational& c);
  static EdgePotential Constant(const Sft& sft, double c);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int e) const { return values_[static_cast<std::size_t>(e)]; }
  const std::vector<double>& values() const { return values_; }

  bool is_exact() const { return exact_.has_value(); }
  const std::vector<Rational>& exact() const;
  // Exact values, falling back to the exact binary value of each double.
  std::vector<Rational> ExactOrBinary() const;

  EdgePotential Restricted(std::span<const int> edge_map) const;
  // Sum over each block of original edges.
  EdgePotential Lifted(const std::vector<std::vector<int>>& blocks) const;

  double Min() const;
  double Max() const;

 private:
  std::vector<double> values_;
  std::optional<std::vector<Rational>> exact_;
};

// a*x + b*y, kept exact when both inputs are exact and the coefficients are
// given as rationals.
EdgePotential Combine(const Rational& a, const EdgePotential& x, const Rational& b, const EdgePotential& y);
EdgePotential Combine(double a, const EdgePotential& x, double b, const EdgePotential& y);

// A strictly positive potential: the roof of a suspension flow.
class Roof {
 public:
  explicit Roof(EdgePotential values);
  static Roof Unit(const Sft& sft) { return Roof(EdgePotential::Constant(sft, Rational(1))); }

  const EdgePotential& potential() const { return values_; }
  double operator[](int e) const { return values_[e]; }
  int size() const { return values_.size(); }

 private:
  EdgePotential values_;
};

void RequireSize(const Sft& sft, const EdgePotential& p);

}  // namespace mcurve

#endif  // MCURVE_CORE_POTENTIAL_HPP_
