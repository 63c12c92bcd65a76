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

#include "automaton.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "error.hpp"
#include "perron.hpp"

namespace mcurve {

int DualMetricAutomaton::AddState(const std::string& name, bool is_initial) {
  state_names.push_back(name);
  initial.push_back(is_initial);
  return state_count() - 1;
}

void DualMetricAutomaton::Validate() const {
  if (initial.size() != state_names.size()) Fail(ErrorKind::kInvalidArgument, "initial flags do not match states");
  std::set<std::string> names;
  for (const auto& n : state_names) {
    if (!names.insert(n).second) Fail(ErrorKind::kInvalidArgument, "duplicate state name '" + n + "'");
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& ed = edges[e];
    if (ed.from < 0 || ed.from >= state_count() || ed.to < 0 || ed.to >= state_count()) {
      Fail(ErrorKind::kInvalidArgument, "edge " + std::to_string(e) + " is dangling");
    }
    if (ed.r <= 0) Fail(ErrorKind::kInvalidArgument, "edge " + std::to_string(e) + " has non-positive r");
  }
}

std::vector<std::string> Prune(DualMetricAutomaton& a) {
  a.Validate();
  const int n = a.state_count();
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (const auto& e : a.edges) out[static_cast<std::size_t>(e.from)].push_back(e.to);
  std::vector<bool> keep(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (a.initial[static_cast<std::size_t>(s)]) {
      keep[static_cast<std::size_t>(s)] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : out[static_cast<std::size_t>(v)]) {
      if (!keep[static_cast<std::size_t>(w)]) {
        keep[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  std::vector<std::string> removed;
  std::vector<int> renumber(static_cast<std::size_t>(n), -1);
  DualMetricAutomaton pruned;
  pruned.metadata = a.metadata;
  for (int s = 0; s < n; ++s) {
    if (keep[static_cast<std::size_t>(s)]) {
      renumber[static_cast<std::size_t>(s)] = pruned.AddState(a.state_names[static_cast<std::size_t>(s)],
                                                               a.initial[static_cast<std::size_t>(s)]);
    } else {
      removed.push_back(a.state_names[static_cast<std::size_t>(s)]);
    }
  }
  for (const auto& e : a.edges) {
    if (!keep[static_cast<std::size_t>(e.from)]) continue;
    AutomatonEdge copy = e;
    copy.from = renumber[static_cast<std::size_t>(e.from)];
    copy.to = renumber[static_cast<std::size_t>(e.to)];
    pruned.edges.push_back(std::move(copy));
  }
  a = std::move(pruned);
  return removed;
}

bool HasParallelEdges(const DualMetricAutomaton& a) {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : a.edges) {
    if (!seen.emplace(e.from, e.to).second) return true;
  }
  return false;
}

namespace {

// The 0-1 skeleton plus the multiplicity of each skeleton edge.
std::pair<Sft, std::vector<double>> Skeleton(const DualMetricAutomaton& a) {
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : a.edges) ++mult[{e.from, e.to}];
  std::vector<Edge> edges;
  std::vector<double> log_mult;
  for (const auto& [key, m] : mult) {
    edges.push_back({key.first, key.second});
    log_mult.push_back(std::log(static_cast<double>(m)));
  }
  return {Sft(a.state_count(), std::move(edges)), std::move(log_mult)};
}

}  // namespace

AutomatonComponents AnalyzeComponents(const DualMetricAutomaton& a) {
  a.Validate();
  auto [skeleton, log_mult] = Skeleton(a);
  SccDecomposition scc = SccDecompose(skeleton);
  AutomatonComponents out;
  out.component_of = scc.component_of;
  out.members = scc.members;
  out.recurrent = scc.recurrent;
  out.spectral_radius.assign(scc.members.size(), 0.0);
  for (int c = 0; c < scc.count(); ++c) {
    if (!scc.recurrent[static_cast<std::size_t>(c)]) continue;
    Restriction r = RestrictToStates(skeleton, scc.members[static_cast<std::size_t>(c)]);
    std::vector<double> w;
    for (int e : r.edge_map) w.push_back(log_mult[static_cast<std::size_t>(e)]);
    out.spectral_radius[static_cast<std::size_t>(c)] = std::exp(PerronLog(r.sft, w, {1e-13, 1000000, false}).log_radius);
  }
  out.global_radius = out.spectral_radius.empty()
                          ? 0.0
                          : *std::max_element(out.spectral_radius.begin(), out.spectral_radius.end());
  for (int c = 0; c < scc.count(); ++c) {
    if (out.recurrent[static_cast<std::size_t>(c)] &&
        std::abs(out.spectral_radius[static_cast<std::size_t>(c)] - out.global_radius) <= 1e-12 * out.global_radius) {
      out.maximal.push_back(c);
    }
  }
  return out;
}

AutomatonShift ComponentShift(const DualMetricAutomaton& a, int component, MultiEdgePolicy policy) {
  AutomatonComponents comps = AnalyzeComponents(a);
  if (component < 0 || component >= static_cast<int>(comps.members.size())) {
    Fail(ErrorKind::kInvalidArgument, "no such component");
  }
  if (!comps.recurrent[static_cast<std::size_t>(component)]) Fail(ErrorKind::kDomain, "acyclic component");
  const auto& members = comps.members[static_cast<std::size_t>(component)];
  std::vector<int> local(static_cast<std::size_t>(a.state_count()), -1);
  for (std::size_t i = 0; i < members.size(); ++i) local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
  std::vector<int> inner;
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    if (local[static_cast<std::size_t>(a.edges[e].from)] >= 0 && local[static_cast<std::size_t>(a.edges[e].to)] >= 0) {
      inner.push_back(static_cast<int>(e));
    }
  }
  bool parallel = false;
  {
    std::set<std::pair<int, int>> seen;
    for (int e : inner) parallel |= !seen.emplace(a.edges[static_cast<std::size_t>(e)].from, a.edges[static_cast<std::size_t>(e)].to).second;
  }
  AutomatonShift out;
  out.component = component;
  std::vector<Rational> r, psi;
  if (!parallel) {
    std::vector<Edge> edges;
    for (int e : inner) {
      const auto& ed = a.edges[static_cast<std::size_t>(e)];
      edges.push_back({local[static_cast<std::size_t>(ed.from)], local[static_cast<std::size_t>(ed.to)]});
      r.push_back(ed.r);
      psi.push_back(ed.psi);
      out.source_edge.push_back(e);
    }
    out.sft = Sft(static_cast<int>(members.size()), std::move(edges));
    out.state_origin = members;
  } else {
    if (policy == MultiEdgePolicy::kError) {
      Fail(ErrorKind::kDomain, "component has parallel edges; expand it to its edge shift");
    }
    out.expanded = true;
    // States are the component's edges; e -> f when e ends where f starts.
    std::vector<int> index(a.edges.size(), -1);
    for (std::size_t i = 0; i < inner.size(); ++i) index[static_cast<std::size_t>(inner[i])] = static_cast<int>(i);
    std::vector<std::vector<int>> starting(static_cast<std::size_t>(a.state_count()));
    for (int e : inner) starting[static_cast<std::size_t>(a.edges[static_cast<std::size_t>(e)].from)].push_back(e);
    std::vector<Edge> edges;
    for (int e : inner) {
      const auto& ed = a.edges[static_cast<std::size_t>(e)];
      for (int f : starting[static_cast<std::size_t>(ed.to)]) {
        edges.push_back({index[static_cast<std::size_t>(e)], index[static_cast<std::size_t>(f)]});
        r.push_back(ed.r);
        psi.push_back(ed.psi);
        out.source_edge.push_back(e);
      }
    }
    out.sft = Sft(static_cast<int>(inner.size()), std::move(edges));
    for (int e : inner) out.state_origin.push_back(a.edges[static_cast<std::size_t>(e)].from);
  }
  out.r = EdgePotential(std::move(r));
  out.psi = EdgePotential(std::move(psi));
  return out;
}

AutomatonShift MaximalComponentShift(const DualMetricAutomaton& a, MultiEdgePolicy policy) {
  AutomatonComponents comps = AnalyzeComponents(a);
  if (comps.maximal.empty()) Fail(ErrorKind::kDomain, "automaton has no recurrent component");
  return ComponentShift(a, comps.maximal.front(), policy);
}

std::vector<std::string> CycleLabels(const DualMetricAutomaton& a, const AutomatonShift& shift,
                                     const std::vector<int>& shift_edges) {
  std::vector<std::string> out;
  out.reserve(shift_edges.size());
  for (int e : shift_edges) out.push_back(a.edges[static_cast<std::size_t>(shift.source_edge[static_cast<std::size_t>(e)])].label);
  return out;
}

}  // namespace mcurve
