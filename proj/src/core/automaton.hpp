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

#ifndef MCURVE_CORE_AUTOMATON_HPP_
#define MCURVE_CORE_AUTOMATON_HPP_

#include <map>
#include <string>
#include <vector>

#include "potential.hpp"
#include "rational.hpp"
#include "sft.hpp"

namespace mcurve {

struct AutomatonEdge {
  int from = 0;
  int to = 0;
  std::string label;
  Rational r = 1;
  Rational psi = 0;

  friend bool operator==(const AutomatonEdge&, const AutomatonEdge&) = default;
};

// A labelled multigraph with initial states and two edge functionals: a
// positive roof r and a real potential psi.
struct DualMetricAutomaton {
  std::vector<std::string> state_names;
  std::vector<bool> initial;
  std::vector<AutomatonEdge> edges;
  std::map<std::string, std::string> metadata;

  int state_count() const { return static_cast<int>(state_names.size()); }
  int AddState(const std::string& name, bool is_initial = false);
  void Validate() const;

  friend bool operator==(const DualMetricAutomaton&, const DualMetricAutomaton&) = default;
};

// Drops states unreachable from an initial state; returns the names removed.
std::vector<std::string> Prune(DualMetricAutomaton& automaton);

bool HasParallelEdges(const DualMetricAutomaton& automaton);

enum class MultiEdgePolicy {
  kError,
  // Replace the graph by its edge shift: states are automaton edges.
  kExpand,
};

// An automaton component viewed as a shift of finite type carrying r and psi.
struct AutomatonShift {
  Sft sft;
  EdgePotential r;
  EdgePotential psi;
  // Shift edge -> automaton edge whose functionals it carries. For an
  // expanded shift this is the edge entered first.
  std::vector<int> source_edge;
  // Shift state -> automaton state (expanded: the source of the edge).
  std::vector<int> state_origin;
  bool expanded = false;
  int component = -1;

  Roof roof() const { return Roof(r); }
};

struct AutomatonComponents {
  std::vector<int> component_of;
  std::vector<std::vector<int>> members;
  std::vector<bool> recurrent;
  // Spectral radius counting parallel edges.
  std::vector<double> spectral_radius;
  std::vector<int> maximal;
  double global_radius = 0.0;
};

AutomatonComponents AnalyzeComponents(const DualMetricAutomaton& automaton);

AutomatonShift ComponentShift(const DualMetricAutomaton& automaton, int component,
                              MultiEdgePolicy policy = MultiEdgePolicy::kError);
// The first maximal component.
AutomatonShift MaximalComponentShift(const DualMetricAutomaton& automaton,
                                     MultiEdgePolicy policy = MultiEdgePolicy::kError);

// Labels read along a cycle of the component shift.
std::vector<std::string> CycleLabels(const DualMetricAutomaton& automaton, const AutomatonShift& shift,
                                     const std::vector<int>& shift_edges);

}  // namespace mcurve

#endif  // MCURVE_CORE_AUTOMATON_HPP_
