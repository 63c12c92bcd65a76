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

#include "potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace mcurve {

EdgePotential::EdgePotential(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) Fail(ErrorKind::kDomain, "potential values must be finite");
  }
}

EdgePotential::EdgePotential(std::vector<Rational> exact) {
  values_.reserve(exact.size());
  for (auto& q : exact) {
    q.canonicalize();
    values_.push_back(q.get_d());
  }
  exact_ = std::move(exact);
}

EdgePotential EdgePotential::Constant(const Sft& sft, const Rational& c) {
  return EdgePotential(std::vector<Rational>(static_cast<std::size_t>(sft.edge_count()), c));
}

EdgePotential EdgePotential::Constant(const Sft& sft, double c) {
  return EdgePotential(std::vector<double>(static_cast<std::size_t>(sft.edge_count()), c));
}

const std::vector<Rational>& EdgePotential::exact() const {
  if (!exact_) Fail(ErrorKind::kDomain, "exact counting requires rational potential");
  return *exact_;
}

std::vector<Rational> EdgePotential::ExactOrBinary() const {
  if (exact_) return *exact_;
  std::vector<Rational> out;
  out.reserve(values_.size());
  for (double v : values_) out.push_back(ExactFromDouble(v));
  return out;
}

EdgePotential EdgePotential::Restricted(std::span<const int> edge_map) const {
  if (exact_) {
    std::vector<Rational> out;
    out.reserve(edge_map.size());
    for (int e : edge_map) out.push_back((*exact_)[static_cast<std::size_t>(e)]);
    return EdgePotential(std::move(out));
  }
  std::vector<double> out;
  out.reserve(edge_map.size());
  for (int e : edge_map) out.push_back(values_[static_cast<std::size_t>(e)]);
  return EdgePotential(std::move(out));
}

EdgePotential EdgePotential::Lifted(const std::vector<std::vector<int>>& blocks) const {
  if (exact_) {
    std::vector<Rational> out;
    for (const auto& block : blocks) {
      Rational sum = 0;
      for (int e : block) sum += (*exact_)[static_cast<std::size_t>(e)];
      out.push_back(sum);
    }
    return EdgePotential(std::move(out));
  }
  std::vector<double> out;
  for (const auto& block : blocks) {
    double sum = 0;
    for (int e : block) sum += values_[static_cast<std::size_t>(e)];
    out.push_back(sum);
  }
  return EdgePotential(std::move(out));
}

double EdgePotential::Min() const {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

double EdgePotential::Max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

EdgePotential Combine(const Rational& a, const EdgePotential& x, const Rational& b, const EdgePotential& y) {
  if (x.size() != y.size()) Fail(ErrorKind::kInvalidArgument, "potentials live on different shifts");
  if (x.is_exact() && y.is_exact()) {
    std::vector<Rational> out(static_cast<std::size_t>(x.size()));
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = a * x.exact()[e] + b * y.exact()[e];
    return EdgePotential(std::move(out));
  }
  return Combine(a.get_d(), x, b.get_d(), y);
}

EdgePotential Combine(double a, const EdgePotential& x, double b, const EdgePotential& y) {
  if (x.size() != y.size()) Fail(ErrorKind::kInvalidArgument, "potentials live on different shifts");
  std::vector<double> out(static_cast<std::size_t>(x.size()));
  for (int e = 0; e < x.size(); ++e) out[static_cast<std::size_t>(e)] = a * x[e] + b * y[e];
  return EdgePotential(std::move(out));
}

Roof::Roof(EdgePotential values) : values_(std::move(values)) {
  for (int e = 0; e < values_.size(); ++e) {
    bool positive = values_.is_exact() ? values_.exact()[static_cast<std::size_t>(e)] > 0 : values_[e] > 0.0;
    if (!positive) Fail(ErrorKind::kDomain, "roof must be strictly positive; edge " + std::to_string(e) + " is not");
  }
}

void RequireSize(const Sft& sft, const EdgePotential& p) {
  if (p.size() != sft.edge_count()) {
    Fail(ErrorKind::kInvalidArgument, "potential has " + std::to_string(p.size()) + " values but the shift has " +
                                          std::to_string(sft.edge_count()) + " edges");
  }
}

}  // namespace mcurve
