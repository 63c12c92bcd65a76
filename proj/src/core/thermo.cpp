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

#include "thermo.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "cycle_mean.hpp"
#include "error.hpp"

namespace mcurve {
namespace {

void RequireIrreducible(const Sft& sft) {
  if (sft.state_count() == 0 || sft.edge_count() == 0 || !sft.is_irreducible()) {
    Fail(ErrorKind::kDomain, "shift is not irreducible; restrict to a component");
  }
}

// Pressure without the irreducibility check, for inner loops.
double RawPressure(const Sft& sft, const std::vector<double>& w, const ThermoConfig& config) {
  return PerronLog(sft, w, config.perron(false)).log_radius;
}

EquilibriumMeasure RawEquilibrium(const Sft& sft, const std::vector<double>& w, const ThermoConfig& config) {
  PerronResult pr = PerronLog(sft, w, config.perron(true));
  EquilibriumMeasure m;
  m.pressure = pr.log_radius;
  m.edge_mass.resize(w.size());
  double total = 0.0;
  for (int e = 0; e < sft.edge_count(); ++e) {
    const Edge& ed = sft.edge(e);
    double mass = pr.left[static_cast<std::size_t>(ed.from)] * std::exp(w[static_cast<std::size_t>(e)] - pr.log_radius) *
                  pr.right[static_cast<std::size_t>(ed.to)];
    m.edge_mass[static_cast<std::size_t>(e)] = mass;
    total += mass;
  }
  for (double& x : m.edge_mass) x /= total;
  m.state_mass.assign(static_cast<std::size_t>(sft.state_count()), 0.0);
  for (int e = 0; e < sft.edge_count(); ++e) {
    m.state_mass[static_cast<std::size_t>(sft.edge(e).from)] += m.edge_mass[static_cast<std::size_t>(e)];
  }
  double h = 0.0;
  for (int e = 0; e < sft.edge_count(); ++e) {
    double mass = m.edge_mass[static_cast<std::size_t>(e)];
    double from = m.state_mass[static_cast<std::size_t>(sft.edge(e).from)];
    if (mass > 0.0 && from > 0.0) h -= mass * std::log(mass / from);
  }
  m.entropy = h;
  return m;
}

std::vector<double> Scaled(double a, const EdgePotential& x) {
  std::vector<double> out(x.values());
  for (double& v : out) v *= a;
  return out;
}

}  // namespace

double Pressure(const Sft& irreducible, const EdgePotential& weights, const ThermoConfig& config) {
  RequireIrreducible(irreducible);
  RequireSize(irreducible, weights);
  return RawPressure(irreducible, weights.values(), config);
}

double PressureTwo(const Sft& irreducible, const Roof& r, const EdgePotential& psi, double a, double s,
                   const ThermoConfig& config) {
  RequireIrreducible(irreducible);
  RequireSize(irreducible, r.potential());
  RequireSize(irreducible, psi);
  return RawPressure(irreducible, Combine(-a, r.potential(), -s, psi).values(), config);
}

double EquilibriumMeasure::Integrate(const EdgePotential& f) const {
  if (static_cast<std::size_t>(f.size()) != edge_mass.size()) {
    Fail(ErrorKind::kInvalidArgument, "potential and measure live on different shifts");
  }
  double sum = 0.0;
  for (std::size_t e = 0; e < edge_mass.size(); ++e) sum += edge_mass[e] * f[static_cast<int>(e)];
  return sum;
}

EquilibriumMeasure ComputeEquilibrium(const Sft& irreducible, const EdgePotential& weights,
                                      const ThermoConfig& config) {
  RequireIrreducible(irreducible);
  RequireSize(irreducible, weights);
  return RawEquilibrium(irreducible, weights.values(), config);
}

double PressureSlope(const Sft& irreducible, const EdgePotential& base, const EdgePotential& f, double t,
                     const ThermoConfig& config) {
  EdgePotential w = Combine(1.0, base, t, f);
  return ComputeEquilibrium(irreducible, w, config).Integrate(f);
}

ManhattanCurve::ManhattanCurve(Sft irreducible, Roof r, EdgePotential psi, ThermoConfig config)
    : sft_(std::move(irreducible)), roof_(std::move(r)), psi_(std::move(psi)), config_(config) {
  RequireIrreducible(sft_);
  RequireSize(sft_, roof_.potential());
  RequireSize(sft_, psi_);
  flat_ = roof_.potential().Min() == roof_.potential().Max();
}

EdgePotential ManhattanCurve::PointWeights(double a, double s) const {
  return Combine(-a, roof_.potential(), -s, psi_);
}

double ManhattanCurve::Theta(double s) const {
  const double p0 = RawPressure(sft_, Scaled(-s, psi_), config_);
  const double rmin = roof_.potential().Min();
  const double rmax = roof_.potential().Max();
  // Constant roof: P(-a c - s psi) = P(-s psi) - a c.
  if (flat_) return p0 / rmin;
  if (p0 == 0.0) return 0.0;
  // P(-s psi) - a rmax <= P(-a r - s psi) <= P(-s psi) - a rmin for a >= 0,
  // with the inequalities reversed for a <= 0.
  double lo = std::min(p0 / rmax, p0 / rmin);
  double hi = std::max(p0 / rmax, p0 / rmin);
  double a = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    EquilibriumMeasure m = RawEquilibrium(sft_, PointWeights(a, s).values(), config_);
    const double f = m.pressure;
    if (std::abs(f) <= config_.root_residual) return a;
    if (f > 0.0) {
      lo = a;
    } else {
      hi = a;
    }
    const double slope = -m.Integrate(roof_.potential());
    double next = a - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a))) return next;
    a = next;
  }
  return a;
}

double ManhattanCurve::ThetaDerivative(double s) const {
  const double a = Theta(s);
  EquilibriumMeasure m = RawEquilibrium(sft_, PointWeights(a, s).values(), config_);
  return -m.Integrate(psi_) / m.Integrate(roof_.potential());
}

double ManhattanCurve::Residual(double s) const {
  return std::abs(RawPressure(sft_, PointWeights(Theta(s), s).values(), config_));
}

std::vector<CurveSample> ManhattanCurve::Sample(double s_begin, double s_end, int count) const {
  if (count < 1) Fail(ErrorKind::kInvalidArgument, "sample count must be positive");
  std::vector<CurveSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double s = count == 1 ? s_begin : s_begin + (s_end - s_begin) * i / (count - 1);
    out.push_back({s, Theta(s), ThetaDerivative(s)});
  }
  return out;
}

RateFunction::RateFunction(Sft irreducible, EdgePotential psi, ThermoConfig config)
    : sft_(std::move(irreducible)), psi_(std::move(psi)), config_(config) {
  RequireIrreducible(sft_);
  RequireSize(sft_, psi_);
  alpha_min_ = MinMeanCycle(sft_, psi_).mean;
  alpha_max_ = MaxMeanCycle(sft_, psi_).mean;
  EquilibriumMeasure mme = RawEquilibrium(sft_, std::vector<double>(static_cast<std::size_t>(sft_.edge_count()), 0.0),
                                          config_);
  entropy_ = mme.pressure;
  mean_ = mme.Integrate(psi_);
}

double RateFunction::Objective(double eta, double t) const {
  return t * eta + entropy_ - RawPressure(sft_, Scaled(t, psi_), config_);
}

double RateFunction::Argmax(double eta) const {
  if (degenerate() || eta == mean_) return 0.0;
  auto excess = [&](double t) {
    return RawEquilibrium(sft_, Scaled(t, psi_), config_).Integrate(psi_) - eta;
  };
  // P'(t) increases from alpha_min to alpha_max; find a sign change.
  const double dir = eta > mean_ ? 1.0 : -1.0;
  double near = 0.0, g_near = mean_ - eta;
  double far = dir, g_far = excess(far);
  while (g_far * g_near > 0.0) {
    if (std::abs(far) >= config_.legendre_cap) return far;
    near = far;
    g_near = g_far;
    far = std::clamp(2.0 * far, -config_.legendre_cap, config_.legendre_cap);
    g_far = excess(far);
  }
  // Illinois false position on [near, far].
  int side = 0;
  double t = near;
  for (int it = 0; it < 200; ++it) {
    t = (near * g_far - far * g_near) / (g_far - g_near);
    if (!std::isfinite(t)) t = 0.5 * (near + far);
    const double g = excess(t);
    if (g == 0.0 || std::abs(far - near) <= 1e-13 * std::max(1.0, std::abs(t))) break;
    if (g * g_far > 0.0) {
      far = t;
      g_far = g;
      if (side == -1) g_near *= 0.5;
      side = -1;
    } else {
      near = t;
      g_near = g;
      if (side == 1) g_far *= 0.5;
      side = 1;
    }
  }
  return t;
}

double RateFunction::Rate(double eta) const {
  const Rational exact_eta = ExactFromDouble(eta);
  if (exact_eta < alpha_min_ || exact_eta > alpha_max_) return std::numeric_limits<double>::infinity();
  if (degenerate()) return 0.0;
  return std::max(0.0, Objective(eta, Argmax(eta)));
}

double DeltaR(const Sft& irreducible, const Roof& r, const ThermoConfig& config) {
  ManhattanCurve curve(irreducible, r, EdgePotential::Constant(irreducible, 0.0), config);
  return curve.Theta(0.0);
}

namespace {

// Integer-combination reduction of (n, s) vectors to a 2x2 echelon basis
// (p, sigma), (0, tau); tau is produced by the supplied gcd.
template <typename Scalar, typename GcdFn>
void Echelon(std::vector<std::pair<long, Scalar>> rows, GcdFn gcd, long* p, Scalar* sigma, Scalar* tau) {
  std::pair<long, Scalar> pivot{0, Scalar(0)};
  std::vector<Scalar> vertical;
  for (auto row : rows) {
    while (row.first != 0) {
      long q = pivot.first / row.first;
      pivot.first -= q * row.first;
      pivot.second -= Scalar(q) * row.second;
      std::swap(pivot, row);
    }
    vertical.push_back(row.second);
  }
  if (pivot.first < 0) {
    pivot.first = -pivot.first;
    pivot.second = -pivot.second;
  }
  *p = pivot.first;
  *sigma = pivot.second;
  *tau = gcd(vertical);
}

}  // namespace

LatticeReport IsLattice(const Sft& irreducible, const EdgePotential& psi, bool exact) {
  RequireIrreducible(irreducible);
  RequireSize(irreducible, psi);
  const Sft& g = irreducible;
  // BFS tree from state 0; each edge then contributes one generator
  // (1 + depth(u) - depth(v), psi(e) + height(u) - height(v)).
  std::vector<int> parent_edge(static_cast<std::size_t>(g.state_count()), -1);
  std::vector<int> order{0};
  std::vector<bool> seen(static_cast<std::size_t>(g.state_count()), false);
  seen[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int e : g.out_edges(order[head])) {
      int v = g.edge(e).to;
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        parent_edge[static_cast<std::size_t>(v)] = e;
        order.push_back(v);
      }
    }
  }
  std::vector<long> depth(static_cast<std::size_t>(g.state_count()), 0);
  LatticeReport report;
  const bool rational = exact && psi.is_exact();
  report.verified = rational;

  if (rational) {
    std::vector<Rational> height(static_cast<std::size_t>(g.state_count()), Rational(0));
    for (std::size_t i = 1; i < order.size(); ++i) {
      int v = order[i];
      int e = parent_edge[static_cast<std::size_t>(v)];
      int u = g.edge(e).from;
      depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
      height[static_cast<std::size_t>(v)] = height[static_cast<std::size_t>(u)] + psi.exact()[static_cast<std::size_t>(e)];
    }
    Integer den = 1;
    for (const auto& q : psi.exact()) den = Lcm(den, q.get_den());
    std::vector<std::pair<long, Integer>> rows;
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      Rational s = psi.exact()[static_cast<std::size_t>(e)] + height[static_cast<std::size_t>(ed.from)] -
                   height[static_cast<std::size_t>(ed.to)];
      Rational scaled = s * den;
      scaled.canonicalize();
      rows.emplace_back(1 + depth[static_cast<std::size_t>(ed.from)] - depth[static_cast<std::size_t>(ed.to)],
                        scaled.get_num());
    }
    long p = 0;
    Integer sigma, tau;
    Echelon<Integer>(
        rows,
        [](const std::vector<Integer>& xs) {
          Integer acc = 0;
          for (const auto& x : xs) acc = Gcd(acc, x);
          return acc;
        },
        &p, &sigma, &tau);
    report.period = static_cast<int>(p);
    report.lattice = true;
    if (tau == 0) {
      report.constant = true;
      report.b = 0;
      report.a = Rational(sigma, den * p);
      report.a.canonicalize();
      report.note = "cohomologous to a constant";
    } else {
      report.b = Rational(tau, den);
      report.b.canonicalize();
      // a p = sigma/den modulo b; reduce a into [0, b/p).
      Rational a(sigma, den * p);
      a.canonicalize();
      Rational step = report.b / p;
      Integer k = Floor(a / step);
      report.a = a - step * Rational(k);
      report.a.canonicalize();
    }
    report.a_approx = report.a.get_d();
    report.b_approx = report.b.get_d();
    return report;
  }

  std::vector<double> height(static_cast<std::size_t>(g.state_count()), 0.0);
  for (std::size_t i = 1; i < order.size(); ++i) {
    int v = order[i];
    int e = parent_edge[static_cast<std::size_t>(v)];
    int u = g.edge(e).from;
    depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
    height[static_cast<std::size_t>(v)] = height[static_cast<std::size_t>(u)] + psi[e];
  }
  double scale = 0.0;
  std::vector<std::pair<long, double>> rows;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    double s = psi[e] + height[static_cast<std::size_t>(ed.from)] - height[static_cast<std::size_t>(ed.to)];
    scale = std::max(scale, std::abs(s));
    rows.emplace_back(1 + depth[static_cast<std::size_t>(ed.from)] - depth[static_cast<std::size_t>(ed.to)], s);
  }
  const double tol = 1e-9 * std::max(1.0, scale);
  bool converged = true;
  long p = 0;
  double sigma = 0.0, tau = 0.0;
  Echelon<double>(
      rows,
      [&](const std::vector<double>& xs) {
        // Real Euclid; a remainder that never vanishes means no common
        // period exists, up to the tolerance.
        double acc = 0.0;
        for (double x : xs) {
          double a = std::abs(acc), b = std::abs(x);
          if (b <= tol) continue;
          if (a <= tol) {
            acc = b;
            continue;
          }
          int steps = 0;
          while (b > tol) {
            double r = std::fmod(a, b);
            if (r > b - tol) r = 0.0;
            a = b;
            b = r;
            if (++steps > 64) {
              converged = false;
              break;
            }
          }
          acc = a;
          if (!converged || acc <= 1e3 * tol) {
            converged = false;
            break;
          }
        }
        return acc;
      },
      &p, &sigma, &tau);
  report.period = static_cast<int>(p);
  report.note = "numerical, unverified";
  if (!converged) {
    report.lattice = false;
    return report;
  }
  report.lattice = true;
  if (tau <= tol) {
    report.constant = true;
    report.a_approx = sigma / static_cast<double>(p);
    report.note += "; cohomologous to a constant";
  } else {
    report.b_approx = tau;
    double step = tau / static_cast<double>(p);
    double a = sigma / static_cast<double>(p);
    report.a_approx = a - step * std::floor(a / step);
  }
  report.a = ExactFromDouble(report.a_approx);
  report.b = ExactFromDouble(report.b_approx);
  return report;
}

}  // namespace mcurve
