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

#include "sft.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "error.hpp"
#include "perron.hpp"

namespace mcurve {

Sft::Sft(int state_count, std::vector<Edge> edges)
    : state_count_(state_count), edges_(std::move(edges)) {
  if (state_count_ < 0) Fail(ErrorKind::kInvalidArgument, "negative state count");
  out_.assign(static_cast<std::size_t>(state_count_), {});
  in_.assign(static_cast<std::size_t>(state_count_), {});
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if (ed.from < 0 || ed.from >= state_count_ || ed.to < 0 || ed.to >= state_count_) {
      Fail(ErrorKind::kInvalidArgument,
           "edge " + std::to_string(e) + " (" + std::to_string(ed.from) + "->" +
               std::to_string(ed.to) + ") references a state outside [0, " +
               std::to_string(state_count_) + ")");
    }
    out_[static_cast<std::size_t>(ed.from)].push_back(e);
    in_[static_cast<std::size_t>(ed.to)].push_back(e);
  }
  for (const auto& outs : out_) {
    std::vector<int> targets;
    targets.reserve(outs.size());
    for (int e : outs) targets.push_back(edges_[static_cast<std::size_t>(e)].to);
    std::sort(targets.begin(), targets.end());
    if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) {
      Fail(ErrorKind::kInvalidArgument, "duplicate edge: a shift of finite type is a 0-1 matrix");
    }
  }
}

Sft Sft::FromMatrix(const std::vector<std::vector<int>>& a) {
  const int k = static_cast<int>(a.size());
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(a[static_cast<std::size_t>(i)].size()) != k) {
      Fail(ErrorKind::kInvalidArgument, "transition matrix must be square");
    }
    for (int j = 0; j < k; ++j) {
      int v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v != 0 && v != 1) Fail(ErrorKind::kInvalidArgument, "transition matrix must be 0-1");
      if (v == 1) edges.push_back({i, j});
    }
  }
  return Sft(k, std::move(edges));
}

Sft Sft::FullShift(int k) {
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) edges.push_back({i, j});
  return Sft(k, std::move(edges));
}

std::optional<int> Sft::find_edge(int from, int to) const {
  for (int e : out_edges(from)) {
    if (edge(e).to == to) return e;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> Sft::adjacency_matrix() const {
  std::vector<std::vector<int>> a(static_cast<std::size_t>(state_count_),
                                  std::vector<int>(static_cast<std::size_t>(state_count_), 0));
  for (const Edge& e : edges_) a[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(e.to)] = 1;
  return a;
}

bool Sft::is_irreducible() const {
  if (state_count_ == 0 || edges_.empty()) return false;
  // Forward and backward reachability from state 0.
  for (bool forward : {true, false}) {
    std::vector<char> seen(static_cast<std::size_t>(state_count_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : forward ? out_edges(v) : in_edges(v)) {
        int w = forward ? edge(e).to : edge(e).from;
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != state_count_) return false;
  }
  return true;
}

bool Sft::is_aperiodic() const {
  return is_irreducible() && Primitivity(*this).aperiodic;
}

namespace {

// Iterative Tarjan; returns component index per state in discovery order.
std::vector<int> Tarjan(const Sft& sft, int* count) {
  const int n = sft.state_count();
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
      comp(static_cast<std::size_t>(n), -1);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  int next_index = 0;
  int next_comp = 0;
  struct Frame {
    int v;
    std::size_t pos;
  };
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      auto outs = sft.out_edges(f.v);
      if (f.pos < outs.size()) {
        int w = sft.edge(outs[f.pos++]).to;
        auto wi = static_cast<std::size_t>(w);
        if (index[wi] == -1) {
          index[wi] = low[wi] = next_index++;
          stack.push_back(w);
          on_stack[wi] = true;
          call.push_back({w, 0});
        } else if (on_stack[wi]) {
          low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], index[wi]);
        }
        continue;
      }
      int v = f.v;
      call.pop_back();
      if (!call.empty()) {
        int u = call.back().v;
        low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
      }
      if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp[static_cast<std::size_t>(w)] = next_comp;
        } while (w != v);
        ++next_comp;
      }
    }
  }
  *count = next_comp;
  return comp;
}

}  // namespace

SccDecomposition SccDecompose(const Sft& sft) {
  SccDecomposition out;
  const int n = sft.state_count();
  int raw_count = 0;
  std::vector<int> raw = Tarjan(sft, &raw_count);

  // Renumber by smallest member so ids are stable under edge reordering.
  std::vector<int> renum(static_cast<std::size_t>(raw_count), -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    int& r = renum[static_cast<std::size_t>(raw[static_cast<std::size_t>(v)])];
    if (r == -1) r = next++;
  }
  out.component_of.resize(static_cast<std::size_t>(n));
  out.members.assign(static_cast<std::size_t>(raw_count), {});
  for (int v = 0; v < n; ++v) {
    int c = renum[static_cast<std::size_t>(raw[static_cast<std::size_t>(v)])];
    out.component_of[static_cast<std::size_t>(v)] = c;
    out.members[static_cast<std::size_t>(c)].push_back(v);
  }
  out.successors.assign(static_cast<std::size_t>(raw_count), {});
  out.recurrent.assign(static_cast<std::size_t>(raw_count), false);
  for (const Edge& e : sft.edges()) {
    int a = out.component_of[static_cast<std::size_t>(e.from)];
    int b = out.component_of[static_cast<std::size_t>(e.to)];
    if (a == b) {
      out.recurrent[static_cast<std::size_t>(a)] = true;
    } else {
      out.successors[static_cast<std::size_t>(a)].push_back(b);
    }
  }
  for (auto& s : out.successors) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  out.spectral_radius.assign(static_cast<std::size_t>(raw_count), 0.0);
  for (int c = 0; c < raw_count; ++c) {
    if (!out.recurrent[static_cast<std::size_t>(c)]) continue;
    Restriction r = RestrictToStates(sft, out.members[static_cast<std::size_t>(c)]);
    std::vector<double> zeros(static_cast<std::size_t>(r.sft.edge_count()), 0.0);
    PerronOptions opts;
    opts.need_left = false;
    PerronResult pr = PerronLog(r.sft, zeros, opts);
    out.spectral_radius[static_cast<std::size_t>(c)] = std::exp(pr.log_radius);
  }
  out.global_radius = 0.0;
  for (double r : out.spectral_radius) out.global_radius = std::max(out.global_radius, r);
  if (out.global_radius > 0.0) {
    for (int c = 0; c < raw_count; ++c) {
      double r = out.spectral_radius[static_cast<std::size_t>(c)];
      if (std::fabs(r - out.global_radius) <= 1e-12 * out.global_radius) out.maximal.push_back(c);
    }
  }
  return out;
}

namespace {

PrimitivityInfo PrimitivityOfStates(const Sft& sft, const std::vector<int>& states) {
  Restriction r = RestrictToStates(sft, states);
  const Sft& g = r.sft;
  const int k = g.state_count();
  if (g.edge_count() == 0) Fail(ErrorKind::kDomain, "acyclic component");

  // Levels from state 0; the period is the gcd of level defects over edges.
  std::vector<int> level(static_cast<std::size_t>(k), -1);
  std::deque<int> queue{0};
  level[0] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).to;
      if (level[static_cast<std::size_t>(w)] == -1) {
        level[static_cast<std::size_t>(w)] = level[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }
  std::int64_t p = 0;
  for (const Edge& e : g.edges()) {
    p = GcdInt(p, level[static_cast<std::size_t>(e.from)] + 1 - level[static_cast<std::size_t>(e.to)]);
  }
  PrimitivityInfo info;
  info.period = static_cast<int>(p);
  info.aperiodic = p == 1;
  info.cyclic_class.resize(static_cast<std::size_t>(k));
  for (int v = 0; v < k; ++v) info.cyclic_class[static_cast<std::size_t>(v)] = level[static_cast<std::size_t>(v)] % info.period;

  if (info.aperiodic) {
    // Boolean powers; Wielandt bounds the index by (k-1)^2 + 1.
    const std::size_t n = static_cast<std::size_t>(k);
    std::vector<std::vector<char>> a(n, std::vector<char>(n, 0)), power;
    for (const Edge& e : g.edges()) a[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(e.to)] = 1;
    power = a;
    const int bound = (k - 1) * (k - 1) + 1;
    for (int m = 1; m <= bound; ++m) {
      bool positive = true;
      for (std::size_t i = 0; i < n && positive; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!power[i][j]) {
            positive = false;
            break;
          }
      if (positive) {
        info.primitivity_index = m;
        break;
      }
      std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
          if (power[i][l])
            for (std::size_t j = 0; j < n; ++j)
              if (a[l][j]) next[i][j] = 1;
      power.swap(next);
    }
    if (!info.primitivity_index) Fail(ErrorKind::kDomain, "primitivity index exceeds the Wielandt bound");
  }
  return info;
}

}  // namespace

PrimitivityInfo Primitivity(const Sft& sft, int component) {
  SccDecomposition scc = SccDecompose(sft);
  if (component < 0 || component >= scc.count()) Fail(ErrorKind::kInvalidArgument, "no such component");
  if (!scc.recurrent[static_cast<std::size_t>(component)]) Fail(ErrorKind::kDomain, "acyclic component");
  return PrimitivityOfStates(sft, scc.members[static_cast<std::size_t>(component)]);
}

PrimitivityInfo Primitivity(const Sft& irreducible) {
  if (!irreducible.is_irreducible()) {
    if (irreducible.edge_count() == 0) Fail(ErrorKind::kDomain, "acyclic component");
    Fail(ErrorKind::kDomain, "shift is not irreducible; restrict to a component");
  }
  std::vector<int> all(static_cast<std::size_t>(irreducible.state_count()));
  std::iota(all.begin(), all.end(), 0);
  return PrimitivityOfStates(irreducible, all);
}

Restriction RestrictToStates(const Sft& sft, std::span<const int> states) {
  Restriction r;
  std::vector<int> local(static_cast<std::size_t>(sft.state_count()), -1);
  r.state_map.assign(states.begin(), states.end());
  std::sort(r.state_map.begin(), r.state_map.end());
  for (std::size_t i = 0; i < r.state_map.size(); ++i) local[static_cast<std::size_t>(r.state_map[i])] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (int e = 0; e < sft.edge_count(); ++e) {
    const Edge& ed = sft.edge(e);
    int a = local[static_cast<std::size_t>(ed.from)];
    int b = local[static_cast<std::size_t>(ed.to)];
    if (a >= 0 && b >= 0) {
      edges.push_back({a, b});
      r.edge_map.push_back(e);
    }
  }
  r.sft = Sft(static_cast<int>(r.state_map.size()), std::move(edges));
  return r;
}

Restriction Restrict(const Sft& sft, int component) {
  SccDecomposition scc = SccDecompose(sft);
  if (component < 0 || component >= scc.count()) Fail(ErrorKind::kInvalidArgument, "no such component");
  return RestrictToStates(sft, scc.members[static_cast<std::size_t>(component)]);
}

PowerShift PowerSubshift(const Sft& irreducible, int p, int cyclic_class) {
  if (p < 1) Fail(ErrorKind::kInvalidArgument, "power must be positive");
  PrimitivityInfo info = Primitivity(irreducible);
  if (info.period % p != 0) {
    Fail(ErrorKind::kDomain, "power " + std::to_string(p) + " does not divide the period " +
                                 std::to_string(info.period));
  }
  if (cyclic_class < 0 || cyclic_class >= p) Fail(ErrorKind::kInvalidArgument, "no such cyclic class");

  PowerShift out;
  out.power = p;
  // Enumerate length-p paths from states of the chosen class (mod p).
  std::vector<std::vector<int>> paths;
  std::vector<int> start_state, end_state;
  for (int v = 0; v < irreducible.state_count(); ++v) {
    if (info.cyclic_class[static_cast<std::size_t>(v)] % p != cyclic_class) continue;
    std::vector<std::pair<int, std::vector<int>>> frontier{{v, {}}};
    for (int step = 0; step < p; ++step) {
      std::vector<std::pair<int, std::vector<int>>> next;
      for (auto& [s, path] : frontier) {
        for (int e : irreducible.out_edges(s)) {
          auto extended = path;
          extended.push_back(e);
          next.emplace_back(irreducible.edge(e).to, std::move(extended));
        }
      }
      frontier = std::move(next);
    }
    for (auto& [s, path] : frontier) {
      start_state.push_back(v);
      end_state.push_back(s);
      paths.push_back(std::move(path));
    }
  }
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < paths.size(); ++a)
    for (std::size_t b = 0; b < paths.size(); ++b)
      if (end_state[a] == start_state[b]) edges.push_back({static_cast<int>(a), static_cast<int>(b)});
  out.sft = Sft(static_cast<int>(paths.size()), std::move(edges));
  out.blocks = std::move(paths);
  return out;
}

Integer TraceOfPower(const Sft& sft, int n) {
  if (n < 1) Fail(ErrorKind::kInvalidArgument, "path length must be positive");
  const std::size_t k = static_cast<std::size_t>(sft.state_count());
  Integer trace = 0;
  for (std::size_t start = 0; start < k; ++start) {
    std::vector<Integer> row(k, 0);
    row[start] = 1;
    for (int step = 0; step < n; ++step) {
      std::vector<Integer> next(k, 0);
      for (const Edge& e : sft.edges()) {
        if (row[static_cast<std::size_t>(e.from)] != 0) next[static_cast<std::size_t>(e.to)] += row[static_cast<std::size_t>(e.from)];
      }
      row.swap(next);
    }
    trace += row[start];
  }
  return trace;
}

}  // namespace mcurve
