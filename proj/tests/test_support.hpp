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


// Shared helpers for the unit tests: random graphs and brute-force oracles
// that do not reuse library code.

#ifndef MCURVE_TESTS_TEST_SUPPORT_HPP_
#define MCURVE_TESTS_TEST_SUPPORT_HPP_

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "potential.hpp"
#include "rational.hpp"
#include "sft.hpp"

namespace mcurve::testing {

// Strongly connected: a Hamiltonian cycle plus random extra edges. With
// `mixing` a self-loop on state 0 makes it aperiodic as well.
inline Sft RandomIrreducible(std::mt19937_64& rng, int k, double density = 0.35, bool mixing = true) {
  std::vector<std::vector<int>> a(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
  std::bernoulli_distribution coin(density);
  for (int i = 0; i < k; ++i) {
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>((i + 1) % k)] = 1;
    for (int j = 0; j < k; ++j) {
      if (coin(rng)) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    }
  }
  if (mixing) a[0][0] = 1;
  return Sft::FromMatrix(a);
}

// Rationals p/q with |p| <= 6 and q in 1..4.
inline EdgePotential RandomRationalPotential(std::mt19937_64& rng, const Sft& g, int lo = -6, int hi = 6) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, 4);
  std::vector<Rational> v;
  for (int e = 0; e < g.edge_count(); ++e) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    v.push_back(q);
  }
  return EdgePotential(v);
}

// Every closed edge path of length n, by direct depth-first search.
inline void ForEachClosedPath(const Sft& g, int n, const std::function<void(int, const std::vector<int>&)>& fn) {
  std::vector<int> path;
  std::function<void(int, int)> walk = [&](int start, int at) {
    if (static_cast<int>(path.size()) == n) {
      if (at == start) fn(start, path);
      return;
    }
    for (const Edge& e : g.edges()) {
      if (e.from != at) continue;
      const int id = static_cast<int>(&e - g.edges().data());
      path.push_back(id);
      walk(start, e.to);
      path.pop_back();
    }
  };
  for (int s = 0; s < g.state_count(); ++s) walk(s, s);
}

inline Rational PathSum(const std::vector<int>& path, const std::vector<Rational>& values) {
  Rational sum = 0;
  for (int e : path) sum += values[static_cast<std::size_t>(e)];
  return sum;
}

}  // namespace mcurve::testing

#endif  // MCURVE_TESTS_TEST_SUPPORT_HPP_
