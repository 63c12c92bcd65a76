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

#include "orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"

namespace mcurve {

bool IsClosedPath(const Sft& sft, const Cycle& c) {
  if (c.edges.empty()) return false;
  int at = c.start_state;
  for (int e : c.edges) {
    if (e < 0 || e >= sft.edge_count() || sft.edge(e).from != at) return false;
    at = sft.edge(e).to;
  }
  return at == c.start_state;
}

Rational BirkhoffSum(const Cycle& c, const EdgePotential& psi) {
  Rational sum = 0;
  if (psi.is_exact()) {
    for (int e : c.edges) sum += psi.exact()[static_cast<std::size_t>(e)];
  } else {
    for (int e : c.edges) sum += ExactFromDouble(psi[e]);
  }
  return sum;
}

Rational BirkhoffMean(const Cycle& c, const EdgePotential& psi) {
  if (c.edges.empty()) Fail(ErrorKind::kInvalidArgument, "empty cycle has no mean");
  Rational mean = BirkhoffSum(c, psi) / c.period();
  mean.canonicalize();
  return mean;
}

Cycle Repeat(const Cycle& c, int times) {
  if (times < 1) Fail(ErrorKind::kInvalidArgument, "repetition count must be positive");
  Cycle out{c.start_state, {}};
  out.edges.reserve(c.edges.size() * static_cast<std::size_t>(times));
  for (int i = 0; i < times; ++i) out.edges.insert(out.edges.end(), c.edges.begin(), c.edges.end());
  return out;
}

Cycle Concatenate(const Cycle& a, const Cycle& b) {
  if (a.start_state != b.start_state) Fail(ErrorKind::kInvalidArgument, "cycles start at different states");
  Cycle out = a;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

Cycle Rotate(const Sft& sft, const Cycle& c, int shift) {
  if (c.edges.empty()) return c;
  const int n = c.period();
  shift = ((shift % n) + n) % n;
  Cycle out{0, {}};
  out.edges.reserve(c.edges.size());
  for (int i = 0; i < n; ++i) out.edges.push_back(c.edges[static_cast<std::size_t>((i + shift) % n)]);
  out.start_state = sft.edge(out.edges.front()).from;
  return out;
}

std::vector<int> StatesOf(const Sft& sft, const Cycle& c) {
  std::vector<int> out;
  out.reserve(c.edges.size());
  for (int e : c.edges) out.push_back(sft.edge(e).from);
  return out;
}

std::vector<Cycle> EnumerateCycles(const Sft& sft, int n, const OrbitLimits& limits) {
  if (n < 1) Fail(ErrorKind::kInvalidArgument, "period must be positive");
  if (n > limits.enumerate_cap) {
    Fail(ErrorKind::kBudget, "period " + std::to_string(n) + " exceeds the enumeration cap " +
                                 std::to_string(limits.enumerate_cap));
  }
  const Integer total = TraceOfPower(sft, n);
  if (total > limits.max_points) {
    Fail(ErrorKind::kBudget, "enumeration would produce " + total.get_str() + " periodic points; the limit is " +
                                 std::to_string(limits.max_points));
  }
  std::vector<Cycle> out;
  out.reserve(total.get_ui());
  const int k = sft.state_count();
  for (int s = 0; s < k; ++s) {
    // Backward distances to s prune paths that cannot close in time.
    std::vector<int> back(static_cast<std::size_t>(k), std::numeric_limits<int>::max());
    back[static_cast<std::size_t>(s)] = 0;
    std::vector<int> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int v = queue[h];
      for (int e : sft.in_edges(v)) {
        int u = sft.edge(e).from;
        if (back[static_cast<std::size_t>(u)] == std::numeric_limits<int>::max()) {
          back[static_cast<std::size_t>(u)] = back[static_cast<std::size_t>(v)] + 1;
          queue.push_back(u);
        }
      }
    }
    if (back[static_cast<std::size_t>(s)] == std::numeric_limits<int>::max()) continue;
    std::vector<int> path;
    std::vector<std::size_t> cursor{0};
    int at = s;
    while (!cursor.empty()) {
      const auto outs = sft.out_edges(at);
      std::size_t& i = cursor.back();
      const int remaining = n - static_cast<int>(path.size());
      if (remaining == 0) {
        if (at == s) out.push_back(Cycle{s, path});
        cursor.pop_back();
        if (!path.empty()) {
          at = sft.edge(path.back()).from;
          path.pop_back();
        }
        continue;
      }
      if (i == outs.size()) {
        cursor.pop_back();
        if (!path.empty()) {
          at = sft.edge(path.back()).from;
          path.pop_back();
        }
        continue;
      }
      int e = outs[i++];
      int v = sft.edge(e).to;
      if (back[static_cast<std::size_t>(v)] > remaining - 1) continue;
      path.push_back(e);
      at = v;
      cursor.push_back(0);
    }
  }
  return out;
}

TracePolynomials::TracePolynomials(const Sft& sft, const EdgePotential& psi, int n_max, const OrbitLimits& limits) {
  RequireSize(sft, psi);
  if (n_max < 1) Fail(ErrorKind::kInvalidArgument, "period must be positive");
  if (n_max > limits.count_cap) {
    Fail(ErrorKind::kBudget, "period " + std::to_string(n_max) + " exceeds the counting cap " +
                                 std::to_string(limits.count_cap));
  }
  const auto& values = psi.exact();
  for (const auto& q : values) denominator_ = Lcm(denominator_, q.get_den());
  std::vector<long> degree(values.size());
  long low = std::numeric_limits<long>::max(), high = std::numeric_limits<long>::min();
  for (std::size_t e = 0; e < values.size(); ++e) {
    Rational scaled = values[e] * denominator_;
    scaled.canonicalize();
    if (!scaled.get_num().fits_slong_p()) Fail(ErrorKind::kBudget, "scaled potential does not fit a machine word");
    degree[e] = scaled.get_num().get_si();
    low = std::min(low, degree[e]);
    high = std::max(high, degree[e]);
  }
  if (values.empty()) low = high = 0;
  low_ = low;
  for (auto& d : degree) d -= low;
  const long span = high - low;
  if (span > 0 && static_cast<double>(span) * n_max * sft.state_count() > static_cast<double>(limits.max_coefficients)) {
    Fail(ErrorKind::kBudget, "polynomial degree " + std::to_string(span * n_max) + " exceeds the coefficient budget");
  }

  coefficients_.assign(static_cast<std::size_t>(n_max) + 1, {});
  for (int n = 1; n <= n_max; ++n) coefficients_[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(span * n + 1), 0);
  coefficients_[0] = {Integer(1)};

  const int k = sft.state_count();
  using Poly = std::vector<Integer>;
  for (int s = 0; s < k; ++s) {
    // Row s of M(z)^n, one polynomial per target state.
    std::vector<Poly> row(static_cast<std::size_t>(k));
    row[static_cast<std::size_t>(s)] = {Integer(1)};
    for (int n = 1; n <= n_max; ++n) {
      std::vector<Poly> next(static_cast<std::size_t>(k));
      for (int e = 0; e < sft.edge_count(); ++e) {
        const Edge& ed = sft.edge(e);
        const Poly& from = row[static_cast<std::size_t>(ed.from)];
        if (from.empty()) continue;
        Poly& to = next[static_cast<std::size_t>(ed.to)];
        const std::size_t shift = static_cast<std::size_t>(degree[static_cast<std::size_t>(e)]);
        if (to.size() < from.size() + shift) to.resize(from.size() + shift, 0);
        for (std::size_t i = 0; i < from.size(); ++i) {
          if (from[i] != 0) to[i + shift] += from[i];
        }
      }
      row = std::move(next);
      const Poly& diag = row[static_cast<std::size_t>(s)];
      auto& acc = coefficients_[static_cast<std::size_t>(n)];
      for (std::size_t i = 0; i < diag.size(); ++i) acc[i] += diag[i];
    }
  }
}

const std::vector<Integer>& TracePolynomials::coefficients(int n) const {
  if (n < 0 || n > n_max()) Fail(ErrorKind::kInvalidArgument, "period outside the computed range");
  return coefficients_[static_cast<std::size_t>(n)];
}

Integer TracePolynomials::CountSum(int n, const Rational& sum) const {
  const auto& c = coefficients(n);
  Rational scaled = sum * denominator_;
  scaled.canonicalize();
  if (scaled.get_den() != 1) return 0;
  Integer index = scaled.get_num() - Integer(low_) * n;
  if (index < 0 || index >= static_cast<unsigned long>(c.size())) return 0;
  return c[index.get_ui()];
}

Integer TracePolynomials::CountWindow(int n, const Rational& eta, const Rational& delta) const {
  if (delta < 0) Fail(ErrorKind::kInvalidArgument, "window half-width must be nonnegative");
  if (delta == 0) return CountSum(n, eta * n);
  const auto& c = coefficients(n);
  Integer count = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Rational mean(Integer(static_cast<long>(i)) + Integer(low_) * n, denominator_ * n);
    mean.canonicalize();
    if (Abs(mean - eta) < delta) count += c[i];
  }
  return count;
}

Integer TracePolynomials::Total(int n) const {
  Integer total = 0;
  for (const auto& x : coefficients(n)) total += x;
  return total;
}

WindowCount CountWindow(const Sft& sft, const EdgePotential& psi, int n, const Rational& eta, const Rational& delta,
                        const OrbitLimits& limits) {
  TracePolynomials tp(sft, psi, n, limits);
  return WindowCount{n, eta, delta, tp.CountWindow(n, eta, delta), tp.Total(n)};
}

PeriodGcd DPsiW(const Sft& sft, const EdgePotential& psi, const Rational& w, int n_max, const OrbitLimits& limits) {
  TracePolynomials tp(sft, psi, n_max, limits);
  PeriodGcd out;
  out.n_max = n_max;
  for (int n = 1; n <= n_max; ++n) {
    if (tp.CountSum(n, w * n) > 0) {
      out.witnesses.push_back(n);
      out.d = GcdInt(out.d, n);
    }
  }
  return out;
}

double LogInteger(const Integer& z) {
  if (z <= 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

std::vector<GrowthRow> EmpiricalGrowth(const Sft& sft, const EdgePotential& psi, const Rational& eta,
                                       const std::vector<std::pair<int, Rational>>& schedule,
                                       const OrbitLimits& limits) {
  int n_max = 1;
  for (const auto& [n, delta] : schedule) n_max = std::max(n_max, n);
  TracePolynomials tp(sft, psi, n_max, limits);
  std::vector<GrowthRow> out;
  for (const auto& [n, delta] : schedule) {
    GrowthRow row;
    row.n = n;
    row.delta = delta;
    row.count = tp.CountWindow(n, eta, delta);
    row.log_rate = LogInteger(row.count) / n;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace mcurve
