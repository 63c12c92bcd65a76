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

#ifndef MCURVE_CORE_SFT_HPP_
#define MCURVE_CORE_SFT_HPP_

#include <optional>
#include <span>
#include <vector>

#include "rational.hpp"

namespace mcurve {

struct Edge {
  int from = 0;
  int to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A subshift of finite type given by its transition graph. States are dense
// indices in [0, k); each (from, to) pair occurs at most once, so the graph
// is the 0-1 matrix A. Points of the shift are never materialized, only
// finite paths and cycles. Structural flags are computed on demand.
class Sft {
 public:
  Sft() = default;
  Sft(int state_count, std::vector<Edge> edges);

  static Sft FromMatrix(const std::vector<std::vector<int>>& a);
  static Sft FullShift(int k);

  int state_count() const { return state_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

  std::span<const int> out_edges(int state) const { return out_[static_cast<std::size_t>(state)]; }
  std::span<const int> in_edges(int state) const { return in_[static_cast<std::size_t>(state)]; }
  std::optional<int> find_edge(int from, int to) const;

  std::vector<std::vector<int>> adjacency_matrix() const;

  bool is_irreducible() const;
  bool is_aperiodic() const;

 private:
  int state_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

struct SccDecomposition {
  std::vector<int> component_of;
  std::vector<std::vector<int>> members;
  // Condensation DAG: successor component ids, sorted.
  std::vector<std::vector<int>> successors;
  // A component is recurrent when it carries at least one edge.
  std::vector<bool> recurrent;
  std::vector<double> spectral_radius;
  std::vector<int> maximal;
  double global_radius = 0.0;

  int count() const { return static_cast<int>(members.size()); }
};

// Components are numbered in order of their smallest state.
SccDecomposition SccDecompose(const Sft& sft);

struct PrimitivityInfo {
  int period = 0;
  bool aperiodic = false;
  // Least N with every entry of A^N positive; only set when aperiodic.
  std::optional<int> primitivity_index;
  // Residue class mod period of each state of the component, indexed like
  // the component's member list. Classes are the sigma^p-invariant pieces.
  std::vector<int> cyclic_class;
};

PrimitivityInfo Primitivity(const Sft& sft, int component);
// Same, for an irreducible shift taken as a whole.
PrimitivityInfo Primitivity(const Sft& irreducible);

struct Restriction {
  Sft sft;
  std::vector<int> state_map;  // new state -> original state
  std::vector<int> edge_map;   // new edge -> original edge
};

Restriction Restrict(const Sft& sft, int component);
Restriction RestrictToStates(const Sft& sft, std::span<const int> states);

// sigma^p on one cyclic class. New states are the length-p paths that start
// in the class; P -> Q whenever P ends where Q starts.
struct PowerShift {
  Sft sft;
  int power = 1;
  std::vector<std::vector<int>> blocks;  // new state -> original edge path
};

PowerShift PowerSubshift(const Sft& irreducible, int p, int cyclic_class = 0);

// tr(A^n): the number of closed edge paths of length n, exactly.
Integer TraceOfPower(const Sft& sft, int n);

}  // namespace mcurve

#endif  // MCURVE_CORE_SFT_HPP_
