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

#include "cycle_mean.hpp"

#include <algorithm>
#include <optional>

#include "error.hpp"

namespace mcurve {
namespace {

// Scales rational weights by the lcm of their denominators.
std::vector<Integer> ToIntegers(const std::vector<Rational>& w, Integer* scale) {
  Integer d = 1;
  for (const auto& q : w) d = Lcm(d, q.get_den());
  std::vector<Integer> out;
  out.reserve(w.size());
  for (const auto& q : w) out.push_back(q.get_num() * (d / q.get_den()));
  *scale = d;
  return out;
}

// Minimum mean over cycles, as a fraction of integer weights.
Rational KarpMinimum(const Sft& g, const std::vector<Integer>& w) {
  const int n = g.state_count();
  // walk[k][v]: least weight of a k-edge walk from state 0 to v.
  std::vector<std::vector<std::optional<Integer>>> walk(
      static_cast<std::size_t>(n) + 1, std::vector<std::optional<Integer>>(static_cast<std::size_t>(n)));
  walk[0][0] = Integer(0);
  for (int k = 1; k <= n; ++k) {
    auto& cur = walk[static_cast<std::size_t>(k)];
    const auto& prev = walk[static_cast<std::size_t>(k) - 1];
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      const auto& from = prev[static_cast<std::size_t>(ed.from)];
      if (!from) continue;
      Integer cand = *from + w[static_cast<std::size_t>(e)];
      auto& slot = cur[static_cast<std::size_t>(ed.to)];
      if (!slot || cand < *slot) slot = cand;
    }
  }
  std::optional<Rational> best;
  for (int v = 0; v < n; ++v) {
    const auto& full = walk[static_cast<std::size_t>(n)][static_cast<std::size_t>(v)];
    if (!full) continue;
    std::optional<Rational> worst;
    for (int k = 0; k < n; ++k) {
      const auto& part = walk[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
      if (!part) continue;
      Rational q(*full - *part, n - k);
      q.canonicalize();
      if (!worst || q > *worst) worst = q;
    }
    if (worst && (!best || *worst < *best)) best = *worst;
  }
  if (!best) Fail(ErrorKind::kDomain, "acyclic component");
  return *best;
}

// Finds a cycle made of zero-reduced-cost edges for the reweighting
// w' = w*den - num, which has no negative cycles and whose zero cycles are
// exactly the minimum-mean cycles.
MeanCycle TightCycle(const Sft& g, const std::vector<Integer>& w, const Rational& mean) {
  const int n = g.state_count();
  std::vector<Integer> reduced;
  reduced.reserve(w.size());
  for (const auto& x : w) reduced.push_back(x * mean.get_den() - mean.get_num());
  // Bellman-Ford from a virtual source joined to all states with weight 0.
  std::vector<Integer> dist(static_cast<std::size_t>(n), Integer(0));
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      Integer cand = dist[static_cast<std::size_t>(ed.from)] + reduced[static_cast<std::size_t>(e)];
      if (cand < dist[static_cast<std::size_t>(ed.to)]) {
        dist[static_cast<std::size_t>(ed.to)] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::vector<std::vector<int>> tight(static_cast<std::size_t>(n));
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (dist[static_cast<std::size_t>(ed.from)] + reduced[static_cast<std::size_t>(e)] ==
        dist[static_cast<std::size_t>(ed.to)]) {
      tight[static_cast<std::size_t>(ed.from)].push_back(e);
    }
  }
  // Iterative DFS for a cycle in the tight subgraph.
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  std::vector<int> via(static_cast<std::size_t>(n), -1);
  for (int root = 0; root < n; ++root) {
    if (color[static_cast<std::size_t>(root)] != 0) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& outs = tight[static_cast<std::size_t>(v)];
      if (next == outs.size()) {
        color[static_cast<std::size_t>(v)] = 2;
        stack.pop_back();
        continue;
      }
      int e = outs[next++];
      int u = g.edge(e).to;
      if (color[static_cast<std::size_t>(u)] == 0) {
        color[static_cast<std::size_t>(u)] = 1;
        via[static_cast<std::size_t>(u)] = e;
        stack.emplace_back(u, 0);
      } else if (color[static_cast<std::size_t>(u)] == 1) {
        std::vector<int> cycle{e};
        for (int x = v; x != u; x = g.edge(via[static_cast<std::size_t>(x)]).from) {
          cycle.push_back(via[static_cast<std::size_t>(x)]);
        }
        std::reverse(cycle.begin(), cycle.end());
        auto first = std::min_element(cycle.begin(), cycle.end(),
                                      [&](int a, int b) { return g.edge(a).from < g.edge(b).from; });
        std::rotate(cycle.begin(), first, cycle.end());
        MeanCycle out;
        out.start_state = g.edge(cycle.front()).from;
        out.edges = std::move(cycle);
        return out;
      }
    }
  }
  Fail(ErrorKind::kVerification, "no tight cycle found for the optimal mean");
}

MeanCycle MinMeanCycleImpl(const Sft& g, std::vector<Rational> values) {
  if (g.state_count() == 0 || !g.is_irreducible()) {
    Fail(ErrorKind::kInvalidArgument, "restrict to a component");
  }
  Integer scale;
  std::vector<Integer> w = ToIntegers(values, &scale);
  Rational scaled_mean = KarpMinimum(g, w);
  MeanCycle out = TightCycle(g, w, scaled_mean);
  out.mean = scaled_mean / scale;
  out.mean.canonicalize();
  return out;
}

}  // namespace

MeanCycle MinMeanCycle(const Sft& irreducible, const EdgePotential& psi) {
  RequireSize(irreducible, psi);
  return MinMeanCycleImpl(irreducible, psi.ExactOrBinary());
}

MeanCycle MaxMeanCycle(const Sft& irreducible, const EdgePotential& psi) {
  RequireSize(irreducible, psi);
  std::vector<Rational> negated = psi.ExactOrBinary();
  for (auto& q : negated) q = -q;
  MeanCycle out = MinMeanCycleImpl(irreducible, std::move(negated));
  out.mean = -out.mean;
  return out;
}

}  // namespace mcurve
