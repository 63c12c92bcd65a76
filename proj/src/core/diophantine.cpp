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

#include "diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>

#include "cycle_mean.hpp"
#include "error.hpp"

namespace mcurve {
namespace {

Cycle AsCycle(const MeanCycle& m) { return Cycle{m.start_state, m.edges}; }

int Sign(const Rational& q) { return sgn(q); }

// -1, 0, 1 as eta is below, at, or above q.
int CompareTarget(const EtaTarget& eta, const Rational& q) {
  if (eta.is_rational()) return Sign(eta.rational() - q);
  for (int depth = 4; depth <= (1 << 14); depth *= 2) {
    auto [lo, hi] = eta.Enclose(depth);
    if (hi < q) return -1;
    if (lo > q) return 1;
  }
  Fail(ErrorKind::kBudget, "could not separate the target from " + ToString(q));
}

struct CfPrefix {
  std::vector<Integer> quotients;
  bool complete = false;
};

// Partial quotients shared by every real in [lo, hi].
CfPrefix CommonPrefix(Rational lo, Rational hi) {
  CfPrefix out;
  while (true) {
    Integer a = Floor(lo);
    if (lo == hi) {
      out.quotients.push_back(a);
      if (lo == Rational(a)) {
        out.complete = true;
        return out;
      }
      lo = 1 / (lo - a);
      lo.canonicalize();
      hi = lo;
      continue;
    }
    if (Floor(hi) != a || lo == Rational(a)) return out;
    out.quotients.push_back(a);
    Rational next_lo = 1 / (hi - a);
    Rational next_hi = 1 / (lo - a);
    next_lo.canonicalize();
    next_hi.canonicalize();
    lo = next_lo;
    hi = next_hi;
  }
}

// Exact-length paths between two states, one witness per distinct sum.
std::map<Rational, std::vector<int>> PathsBySum(const Sft& g, const std::vector<Rational>& w, int from, int to,
                                                int length) {
  const std::size_t k = static_cast<std::size_t>(g.state_count());
  std::vector<std::vector<std::map<Rational, int>>> layers(static_cast<std::size_t>(length) + 1,
                                                           std::vector<std::map<Rational, int>>(k));
  layers[0][static_cast<std::size_t>(from)].emplace(Rational(0), -1);
  long entries = 0;
  for (int step = 0; step < length; ++step) {
    for (std::size_t u = 0; u < k; ++u) {
      for (const auto& [sum, via] : layers[static_cast<std::size_t>(step)][u]) {
        for (int e : g.out_edges(static_cast<int>(u))) {
          Rational next = sum + w[static_cast<std::size_t>(e)];
          auto& slot = layers[static_cast<std::size_t>(step) + 1][static_cast<std::size_t>(g.edge(e).to)];
          if (slot.emplace(next, e).second && ++entries > 2000000) {
            Fail(ErrorKind::kBudget, "too many distinct bridge sums");
          }
        }
      }
    }
  }
  std::map<Rational, std::vector<int>> out;
  for (const auto& [sum, last] : layers[static_cast<std::size_t>(length)][static_cast<std::size_t>(to)]) {
    std::vector<int> path;
    Rational cur = sum;
    int state = to;
    for (int step = length; step > 0; --step) {
      int e = layers[static_cast<std::size_t>(step)][static_cast<std::size_t>(state)].at(cur);
      path.push_back(e);
      cur -= w[static_cast<std::size_t>(e)];
      state = g.edge(e).from;
    }
    std::reverse(path.begin(), path.end());
    out.emplace(sum, std::move(path));
  }
  return out;
}

Cycle Join(int start, std::initializer_list<const std::vector<int>*> parts) {
  Cycle c{start, {}};
  for (const auto* part : parts) c.edges.insert(c.edges.end(), part->begin(), part->end());
  return c;
}

Cycle RepeatTo(const Cycle& c, int period) { return Repeat(c, period / c.period()); }

struct Pair {
  Cycle low;
  Cycle high;
  Rational low_mean;
  Rational high_mean;
  int interval = 0;
};

// The same-start pair whose open mean interval is used for eta.
Pair ChoosePair(const BridgedOrbits& b, const EtaTarget& eta) {
  const int period = b.x.period();
  Pair p;
  if (CompareTarget(eta, b.mean_y) < 0) {
    p.low = RepeatTo(b.extremes.min_witness, period);
    p.high = b.y;
    p.low_mean = b.extremes.alpha_min;
    p.high_mean = b.mean_y;
    p.interval = 1;
  } else {
    p.low = b.x;
    p.high = RepeatTo(b.extremes.max_witness, period);
    p.low_mean = b.mean_x;
    p.high_mean = b.extremes.alpha_max;
    p.interval = 2;
  }
  return p;
}

}  // namespace

MeanCycleExtremes ExtremalMeans(const Sft& irreducible, const EdgePotential& psi) {
  MeanCycle lo = MinMeanCycle(irreducible, psi);
  MeanCycle hi = MaxMeanCycle(irreducible, psi);
  MeanCycleExtremes out;
  out.alpha_min = lo.mean;
  out.alpha_max = hi.mean;
  out.min_witness = AsCycle(lo);
  out.max_witness = AsCycle(hi);
  const int a = out.min_witness.period();
  const int b = out.max_witness.period();
  out.l = static_cast<int>(std::lcm(static_cast<long>(a), static_cast<long>(b)));
  // The construction needs l > 1; two loops are repeated twice.
  if (out.l == 1) out.l = 2;
  return out;
}

EtaTarget EtaTarget::Exact(const Rational& q) {
  EtaTarget t;
  t.rational_ = true;
  t.exact_ = q;
  t.exact_.canonicalize();
  t.approx_ = t.exact_.get_d();
  t.label_ = ToString(t.exact_);
  return t;
}

EtaTarget EtaTarget::FromDouble(double x) {
  EtaTarget t = Exact(ExactFromDouble(x));
  t.label_ = std::to_string(x);
  return t;
}

EtaTarget EtaTarget::FromContinuedFraction(std::function<Integer(int)> quotient, std::string label) {
  auto q = std::make_shared<std::function<Integer(int)>>(std::move(quotient));
  EtaTarget t;
  t.rational_ = false;
  t.label_ = std::move(label);
  t.enclose_ = [q](int depth) {
    Integer h2 = 0, h1 = 1, k2 = 1, k1 = 0;
    Rational prev, cur;
    for (int i = 0; i <= depth + 1; ++i) {
      Integer a = (*q)(i);
      if (i > 0 && a < 1) Fail(ErrorKind::kInvalidArgument, "partial quotients after the first must be positive");
      Integer h = a * h1 + h2, k = a * k1 + k2;
      h2 = h1;
      h1 = h;
      k2 = k1;
      k1 = k;
      prev = cur;
      cur = Rational(h, k);
      cur.canonicalize();
    }
    return prev < cur ? std::make_pair(prev, cur) : std::make_pair(cur, prev);
  };
  auto [lo, hi] = t.enclose_(60);
  t.approx_ = Rational((lo + hi) / 2).get_d();
  return t;
}

EtaTarget EtaTarget::Surd(const Rational& p, const Rational& q, const Integer& d) {
  if (d <= 0 || mpz_perfect_square_p(d.get_mpz_t())) {
    Fail(ErrorKind::kInvalidArgument, "surd radicand must be a positive non-square");
  }
  if (q == 0) return Exact(p);
  EtaTarget t;
  t.rational_ = false;
  t.label_ = ToString(p) + "+" + ToString(q) + "*sqrt(" + d.get_str() + ")";
  t.enclose_ = [p, q, d](int depth) {
    const unsigned long bits = 16ul * static_cast<unsigned long>(depth) + 32ul;
    Integer scaled = d << (2 * bits);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rational lo(root, Integer(1) << bits), hi(root + 1, Integer(1) << bits);
    lo.canonicalize();
    hi.canonicalize();
    Rational a = p + q * lo, b = p + q * hi;
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  t.approx_ = p.get_d() + q.get_d() * std::sqrt(d.get_d());
  return t;
}

EtaTarget EtaTarget::GoldenRatio() {
  EtaTarget t = Surd(Rational(1, 2), Rational(1, 2), 5);
  t.label_ = "golden_ratio";
  return t;
}

EtaTarget EtaTarget::Affine(const Rational& scale, const Rational& shift) const {
  if (scale == 0) Fail(ErrorKind::kInvalidArgument, "affine scale must be nonzero");
  if (rational_) return Exact(scale * exact_ + shift);
  EtaTarget t;
  t.rational_ = false;
  t.label_ = label_;
  Encloser inner = enclose_;
  t.enclose_ = [inner, scale, shift](int depth) {
    auto [lo, hi] = inner(depth);
    Rational a = scale * lo + shift, b = scale * hi + shift;
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  t.approx_ = scale.get_d() * approx_ + shift.get_d();
  return t;
}

std::pair<Rational, Rational> EtaTarget::Enclose(int depth) const {
  if (rational_) return {exact_, exact_};
  return enclose_(std::max(depth, 1));
}

std::vector<HurwitzTriple> HurwitzApprox(const Rational& s, const Rational& t, const EtaTarget& eta, int count) {
  if (!(s < t)) Fail(ErrorKind::kInvalidArgument, "interval must satisfy s < t");
  if (count < 1) Fail(ErrorKind::kInvalidArgument, "count must be positive");
  if (CompareTarget(eta, s) <= 0 || CompareTarget(eta, t) >= 0) {
    Fail(ErrorKind::kDomain, "eta must lie strictly inside (" + ToString(s) + ", " + ToString(t) + ")");
  }
  const Rational width = t - s;
  std::vector<HurwitzTriple> out;
  bool complete = false;
  for (int depth = 8;; depth *= 2) {
    auto [lo, hi] = eta.Enclose(depth);
    Rational xlo = (lo - s) / width, xhi = (hi - s) / width;
    xlo.canonicalize();
    xhi.canonicalize();
    CfPrefix prefix = CommonPrefix(xlo, xhi);
    complete = prefix.complete;
    out.clear();
    Integer h2 = 0, h1 = 1, k2 = 1, k1 = 0;
    for (const Integer& a : prefix.quotients) {
      Integer h = a * h1 + h2, k = a * k1 + k2;
      h2 = h1;
      h1 = h;
      k2 = k1;
      k1 = k;
      if (!out.empty() && k <= out.back().n) continue;
      Rational conv(h, k);
      conv.canonicalize();
      Rational err = std::max(Abs(conv - xlo), Abs(conv - xhi));
      // Hurwitz: |b/n - x| <= 1/(sqrt5 n^2).
      if (5 * err * err * k * k * k * k <= 1) out.push_back({k, k - h, h, err * width});
    }
    if (static_cast<int>(out.size()) >= count || complete) break;
    if (depth > (1 << 16)) Fail(ErrorKind::kBudget, "target enclosure too coarse for the requested count");
  }
  if (complete && static_cast<int>(out.size()) < count) {
    // The final convergent is an exact hit; its multiples stay exact.
    const HurwitzTriple base = out.back();
    for (long m = 2; static_cast<int>(out.size()) < count; ++m) {
      out.push_back({base.n * m, base.a * m, base.b * m, Rational(0)});
    }
  }
  out.resize(std::min(out.size(), static_cast<std::size_t>(count)));
  return out;
}

BridgedOrbits BridgeOrbits(const Sft& mixing, const EdgePotential& psi) {
  RequireSize(mixing, psi);
  PrimitivityInfo info = Primitivity(mixing);
  if (!info.aperiodic) {
    Fail(ErrorKind::kDomain, "shift has period " + std::to_string(info.period) +
                                 "; reduce with power_subshift to a mixing shift first");
  }
  BridgedOrbits out;
  out.extremes = ExtremalMeans(mixing, psi);
  const auto& ext = out.extremes;
  if (ext.alpha_min == ext.alpha_max) Fail(ErrorKind::kDomain, "potential cohomologous to constant");
  out.primitivity_index = *info.primitivity_index;
  out.state_count = mixing.state_count();
  const int m = out.primitivity_index;
  const int l = ext.l;
  const int i = ext.max_witness.start_state;
  const int j = ext.min_witness.start_state;
  const Cycle wmin = RepeatTo(ext.min_witness, l);
  const Cycle wmax = RepeatTo(ext.max_witness, l);
  const std::vector<Rational> w = psi.ExactOrBinary();

  // Bridges i -> j -> i whose closed mean is strictly interior; their total
  // length is a multiple of l so the bridged cycles pair with the witnesses.
  // Lengths up to M + 2l always suffice: a bridge may absorb one copy of
  // each witness.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> best;
  for (int total = 2 * m; total <= 2 * m + 3 * l && !best; ++total) {
    if (total % l != 0) continue;
    const Rational lo = ext.alpha_min * total, hi = ext.alpha_max * total;
    const Rational mid = (lo + hi) / 2;
    std::optional<Rational> best_gap;
    for (int out_len = m; out_len <= total - m; ++out_len) {
      const int back_len = total - out_len;
      if (out_len > m + 2 * l || back_len > m + 2 * l) continue;
      auto outs = PathsBySum(mixing, w, i, j, out_len);
      auto backs = PathsBySum(mixing, w, j, i, back_len);
      for (const auto& [sa, pa] : outs) {
        for (const auto& [sb, pb] : backs) {
          Rational sum = sa + sb;
          if (!(sum > lo && sum < hi)) continue;
          Rational gap = Abs(sum - mid);
          if (!best_gap || gap < *best_gap) {
            best_gap = gap;
            best = std::make_pair(pa, pb);
          }
        }
      }
    }
  }
  if (!best) Fail(ErrorKind::kVerification, "no bridge with interior mean found");
  const auto& [p, q] = *best;
  out.bridge_out = static_cast<int>(p.size());
  out.bridge_back = static_cast<int>(q.size());
  // One repeat already separates the means strictly: the bridge sum is
  // interior and the witnesses differ.
  out.repeats = 1;
  out.x = Join(i, {&p, &wmin.edges, &q});
  out.y = Join(j, {&q, &wmax.edges, &p});
  out.mean_x = BirkhoffMean(out.x, psi);
  out.mean_y = BirkhoffMean(out.y, psi);
  if (!(ext.alpha_min < out.mean_x && out.mean_x < out.mean_y && out.mean_y < ext.alpha_max)) {
    Fail(ErrorKind::kVerification, "bridged means are not strictly ordered");
  }
  const long k = out.state_count;
  out.within_period_bound = out.x.period() <= 2L * m * (1 + k * k);
  return out;
}

double ShrinkConstant::value() const { return numerator.get_d() / std::sqrt(5.0); }

ShrinkConstant ModuleShrinkConstant(int m, int k, const Rational& spread) {
  Rational mm(m), kk(k);
  return {4 * mm * mm * (1 + kk * kk) * spread};
}

ShrinkConstant ProvenShrinkConstant(int m, int k, const Rational& spread) {
  Rational mm(m), kk(k);
  return {4 * mm * mm * (1 + kk * kk) * (1 + kk * kk) * spread};
}

Cycle ShrinkCertificate::Materialize(long max_edges) const {
  if (period > max_edges) {
    Fail(ErrorKind::kBudget, "cycle of period " + period.get_str() + " exceeds the materialization limit " +
                                 std::to_string(max_edges));
  }
  Cycle c{low.start_state, {}};
  c.edges.reserve(period.get_ui());
  for (Integer i = 0; i < low_copies; ++i) c.edges.insert(c.edges.end(), low.edges.begin(), low.edges.end());
  for (Integer i = 0; i < high_copies; ++i) c.edges.insert(c.edges.end(), high.edges.begin(), high.edges.end());
  return c;
}

bool ShrinkCertificate::SelfCheck(const Sft& sft, const EdgePotential& psi) const {
  if (!IsClosedPath(sft, low) || !IsClosedPath(sft, high) || low.start_state != high.start_state) return false;
  if (period != low_copies * low.period() + high_copies * high.period()) return false;
  Rational total = BirkhoffSum(low, psi) * low_copies + BirkhoffSum(high, psi) * high_copies;
  Rational m = total / period;
  m.canonicalize();
  return m == mean;
}

EdgePotential LiftToPower(const PowerShift& power, const EdgePotential& psi) {
  std::vector<std::vector<int>> per_edge;
  per_edge.reserve(static_cast<std::size_t>(power.sft.edge_count()));
  for (const Edge& e : power.sft.edges()) per_edge.push_back(power.blocks[static_cast<std::size_t>(e.from)]);
  return psi.Lifted(per_edge);
}

Cycle LowerFromPower(const PowerShift& power, const Sft& original, const Cycle& c) {
  Cycle out;
  for (int e : c.edges) {
    const auto& block = power.blocks[static_cast<std::size_t>(power.sft.edge(e).from)];
    out.edges.insert(out.edges.end(), block.begin(), block.end());
  }
  out.start_state = out.edges.empty() ? 0 : original.edge(out.edges.front()).from;
  return out;
}

ShrinkReport ShrinkOrbits(const Sft& irreducible, const EdgePotential& psi, const EtaTarget& eta, int count) {
  RequireSize(irreducible, psi);
  PrimitivityInfo info = Primitivity(irreducible);
  if (!info.aperiodic) {
    // sigma^p on one cyclic class is mixing; means scale by p.
    const int p = info.period;
    PowerShift power = PowerSubshift(irreducible, p, 0);
    ShrinkReport inner = ShrinkOrbits(power.sft, LiftToPower(power, psi), eta.Affine(Rational(p), Rational(0)), count);
    ShrinkReport out;
    out.bridge = inner.bridge;
    out.power = p * inner.power;
    out.constant = {inner.constant.numerator * p};
    for (auto& c : inner.certificates) {
      ShrinkCertificate lowered = c;
      lowered.eta = eta.approx();
      lowered.low = LowerFromPower(power, irreducible, c.low);
      lowered.high = LowerFromPower(power, irreducible, c.high);
      lowered.period = c.period * p;
      lowered.mean = c.mean / p;
      lowered.error_bound = c.error_bound / p;
      lowered.constant = out.constant;
      lowered.satisfied = LeqOverSqrt5(lowered.error_bound * lowered.period * lowered.period, out.constant.numerator);
      out.certificates.push_back(std::move(lowered));
    }
    return out;
  }

  ShrinkReport out;
  out.bridge = BridgeOrbits(irreducible, psi);
  const auto& ext = out.bridge.extremes;
  if (CompareTarget(eta, ext.alpha_min) <= 0 || CompareTarget(eta, ext.alpha_max) >= 0) {
    Fail(ErrorKind::kDomain, "eta must lie strictly inside (" + ToString(ext.alpha_min) + ", " +
                                 ToString(ext.alpha_max) + ")");
  }
  out.constant = ModuleShrinkConstant(out.bridge.primitivity_index, out.bridge.state_count,
                                      ext.alpha_max - ext.alpha_min);
  Pair pair = ChoosePair(out.bridge, eta);
  const int period = pair.low.period();
  const Rational low_sum = BirkhoffSum(pair.low, psi);
  const Rational high_sum = BirkhoffSum(pair.high, psi);
  for (const HurwitzTriple& h : HurwitzApprox(pair.low_mean, pair.high_mean, eta, count)) {
    ShrinkCertificate c;
    c.eta = eta.approx();
    c.low = pair.low;
    c.high = pair.high;
    c.low_copies = h.a;
    c.high_copies = h.b;
    c.period = h.n * period;
    c.mean = (low_sum * h.a + high_sum * h.b) / c.period;
    c.mean.canonicalize();
    c.error_bound = eta.is_rational() ? Abs(c.mean - eta.rational()) : h.error_bound;
    c.constant = out.constant;
    c.satisfied = LeqOverSqrt5(c.error_bound * c.period * c.period, out.constant.numerator);
    c.interval = pair.interval;
    out.certificates.push_back(std::move(c));
  }
  return out;
}

namespace {

// The shortest closed path with psi-sum exactly n w, searched by layered
// reachability over (state, scaled sum) up to max_period. Empty when the
// search finds nothing or outgrows its entry budget.
std::optional<Cycle> ShortestExactMean(const Sft& g, const EdgePotential& psi, const Rational& w, int max_period,
                                       long entry_budget) {
  std::vector<Rational> values = psi.ExactOrBinary();
  Integer den = w.get_den();
  for (const auto& v : values) den = Lcm(den, v.get_den());
  if (!den.fits_slong_p()) return std::nullopt;
  std::vector<long> scaled;
  for (const auto& v : values) {
    Rational x = v * den;
    if (!x.get_num().fits_slong_p()) return std::nullopt;
    scaled.push_back(x.get_num().get_si());
  }
  const long lo = *std::min_element(scaled.begin(), scaled.end());
  const long hi = *std::max_element(scaled.begin(), scaled.end());
  const Rational wd = w * den;
  long entries = 0;
  for (int n = 1; n <= max_period; ++n) {
    const Rational target_q = wd * n;
    if (target_q.get_den() != 1 || !target_q.get_num().fits_slong_p()) continue;
    const long target = target_q.get_num().get_si();
    for (int start = 0; start < g.state_count(); ++start) {
      // layer[i]: (state, sum) -> (previous key, edge).
      using Key = std::pair<int, long>;
      std::vector<std::map<Key, std::pair<Key, int>>> layers(static_cast<std::size_t>(n) + 1);
      layers[0][{start, 0}] = {{-1, 0}, -1};
      for (int i = 0; i < n; ++i) {
        const long remaining = n - i - 1;
        for (const auto& [key, back] : layers[static_cast<std::size_t>(i)]) {
          for (int e : g.out_edges(key.first)) {
            const long sum = key.second + scaled[static_cast<std::size_t>(e)];
            if (target - sum < remaining * lo || target - sum > remaining * hi) continue;
            layers[static_cast<std::size_t>(i) + 1].emplace(Key{g.edge(e).to, sum}, std::make_pair(key, e));
          }
        }
        entries += static_cast<long>(layers[static_cast<std::size_t>(i) + 1].size());
        if (entries > entry_budget) return std::nullopt;
      }
      auto it = layers[static_cast<std::size_t>(n)].find({start, target});
      if (it == layers[static_cast<std::size_t>(n)].end()) continue;
      Cycle c;
      c.start_state = start;
      c.edges.resize(static_cast<std::size_t>(n));
      Key key = it->first;
      for (int i = n; i > 0; --i) {
        const auto& back = layers[static_cast<std::size_t>(i)].at(key);
        c.edges[static_cast<std::size_t>(i) - 1] = back.second;
        key = back.first;
      }
      return c;
    }
  }
  return std::nullopt;
}

}  // namespace

Cycle RationalOrbit(const Sft& irreducible, const EdgePotential& psi, const Integer& p, const Integer& q,
                    long max_edges) {
  RequireSize(irreducible, psi);
  if (q <= 0) Fail(ErrorKind::kInvalidArgument, "denominator must be positive");
  Rational w(p, q);
  w.canonicalize();
  PrimitivityInfo info = Primitivity(irreducible);
  if (!info.aperiodic) {
    const int d = info.period;
    PowerShift power = PowerSubshift(irreducible, d, 0);
    Rational lifted = w * d;
    Cycle c = RationalOrbit(power.sft, LiftToPower(power, psi), lifted.get_num(), lifted.get_den(),
                            max_edges / d);
    return LowerFromPower(power, irreducible, c);
  }
  MeanCycleExtremes ext = ExtremalMeans(irreducible, psi);
  if (w < ext.alpha_min || w > ext.alpha_max) {
    Fail(ErrorKind::kDomain, ToString(w) + " lies outside [" + ToString(ext.alpha_min) + ", " +
                                 ToString(ext.alpha_max) + "]");
  }
  if (w == ext.alpha_min) return ext.min_witness;
  if (w == ext.alpha_max) return ext.max_witness;
  if (auto shortest = ShortestExactMean(irreducible, psi, w, 64, 2000000)) return *shortest;
  BridgedOrbits bridge = BridgeOrbits(irreducible, psi);
  Pair pair = ChoosePair(bridge, EtaTarget::Exact(w));
  const int period = pair.low.period();
  Rational d_low = BirkhoffSum(pair.low, psi) - w * period;
  Rational d_high = BirkhoffSum(pair.high, psi) - w * period;
  if (d_low == 0) return pair.low;
  if (d_high == 0) return pair.high;
  // m1 d_low + m2 d_high = 0 in positive integers.
  Integer den = Lcm(d_low.get_den(), d_high.get_den());
  Rational scaled_low = d_low * den, scaled_high = d_high * den;
  scaled_low.canonicalize();
  scaled_high.canonicalize();
  Integer il = scaled_low.get_num(), ih = scaled_high.get_num();
  Integer g = Gcd(ih, -il);
  Integer m1 = ih / g, m2 = -il / g;
  Integer total = (m1 + m2) * period;
  if (total > max_edges) {
    Fail(ErrorKind::kBudget, "orbit of period " + total.get_str() + " exceeds the materialization limit " +
                                 std::to_string(max_edges));
  }
  Cycle c = Concatenate(Repeat(pair.low, static_cast<int>(m1.get_si())), Repeat(pair.high, static_cast<int>(m2.get_si())));
  if (BirkhoffMean(c, psi) != w) Fail(ErrorKind::kVerification, "constructed orbit misses the target mean");
  return c;
}

}  // namespace mcurve
