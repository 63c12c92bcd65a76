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

#include "perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "error.hpp"

namespace mcurve {
namespace {

struct Iterate {
  std::vector<double> vec;
  double radius = 0.0;
  long iterations = 0;
};

// Power iteration on M + shift*I over an explicit entry list. When
// transpose is set, iterates with M^T instead.
Iterate PowerIterate(int n, const std::vector<Edge>& edges, const std::vector<double>& entries,
                     bool transpose, const PerronOptions& opts) {
  const std::size_t k = static_cast<std::size_t>(n);
  std::vector<double> x(k, 1.0), y(k, 0.0);

  std::vector<double> row_sum(k, 0.0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    std::size_t i = static_cast<std::size_t>(transpose ? edges[e].to : edges[e].from);
    row_sum[i] += entries[e];
  }
  double shift = *std::min_element(row_sum.begin(), row_sum.end());
  if (!(shift > 0.0)) shift = std::numeric_limits<double>::min() * 1e6;

  Iterate out;
  double lo = 0.0, hi = 0.0;
  for (long it = 1; it <= opts.max_iterations; ++it) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      std::size_t i = static_cast<std::size_t>(edges[e].from);
      std::size_t j = static_cast<std::size_t>(edges[e].to);
      if (transpose) std::swap(i, j);
      y[i] += entries[e] * x[j];
    }
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double ratio = y[i] / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      y[i] += shift * x[i];
    }
    double scale = *std::max_element(y.begin(), y.end());
    for (std::size_t i = 0; i < k; ++i) {
      x[i] = y[i] / scale;
      // Keep strictly positive in the presence of underflow.
      if (!(x[i] > 0.0)) x[i] = std::numeric_limits<double>::min();
    }
    out.iterations = it;
    if (hi - lo <= opts.rel_tol * lo) break;
    // Re-centre the shift near the radius: keeps the periodic part of the
    // spectrum well inside the dominant circle.
    if (it % 64 == 0 && lo > 0.0) shift = 0.5 * lo;
  }
  if (!(hi - lo <= opts.rel_tol * lo)) {
    Fail(ErrorKind::kBudget, "power iteration did not converge within " +
                                 std::to_string(opts.max_iterations) + " iterations");
  }
  out.radius = 0.5 * (lo + hi);
  out.vec = std::move(x);
  return out;
}

}  // namespace

PerronResult PerronLog(const Sft& irreducible, std::span<const double> log_weights,
                       const PerronOptions& options) {
  const int n = irreducible.state_count();
  if (static_cast<int>(log_weights.size()) != irreducible.edge_count()) {
    Fail(ErrorKind::kInvalidArgument, "one weight per edge is required");
  }
  if (n == 0 || irreducible.edge_count() == 0) Fail(ErrorKind::kDomain, "empty shift has no pressure");
  for (double w : log_weights) {
    if (!std::isfinite(w)) Fail(ErrorKind::kDomain, "edge weights must be finite");
  }

  const double offset = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> entries(log_weights.size());
  for (std::size_t e = 0; e < entries.size(); ++e) entries[e] = std::exp(log_weights[e] - offset);

  Iterate right = PowerIterate(n, irreducible.edges(), entries, false, options);
  PerronResult out;
  out.log_radius = offset + std::log(right.radius);
  out.iterations = right.iterations;
  double total = std::accumulate(right.vec.begin(), right.vec.end(), 0.0);
  for (double& v : right.vec) v /= total;
  out.right = std::move(right.vec);

  if (options.need_left) {
    Iterate left = PowerIterate(n, irreducible.edges(), entries, true, options);
    double dot = 0.0;
    for (std::size_t i = 0; i < out.right.size(); ++i) dot += left.vec[i] * out.right[i];
    for (double& v : left.vec) v /= dot;
    out.left = std::move(left.vec);
    out.iterations += left.iterations;
  }
  return out;
}

}  // namespace mcurve
