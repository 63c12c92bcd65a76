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


#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "test_support.hpp"
#include "thermo.hpp"

namespace mcurve {
namespace {

// log spectral radius of M_ij = sum over edges i->j of exp(w_e), by a
// dense eigensolver.
double EigenLogRadius(const Sft& g, const std::vector<double>& w) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.state_count(), g.state_count());
  for (int e = 0; e < g.edge_count(); ++e) m(g.edge(e).from, g.edge(e).to) += std::exp(w[static_cast<std::size_t>(e)]);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  double best = 0.0;
  for (int i = 0; i < m.rows(); ++i) best = std::max(best, std::abs(solver.eigenvalues()[i]));
  return std::log(best);
}

// Full 2-shift on states {0, 1}; psi counts visits to state 1.
struct TwoShift {
  Sft g = Sft::FullShift(2);
  EdgePotential psi;
  TwoShift() {
    std::vector<Rational> v;
    for (const Edge& e : g.edges()) v.emplace_back(e.to == 1 ? 1 : 0);
    psi = EdgePotential(v);
  }
};

// Two states with loops of length 1 and 2 and unit-length crossings.
Sft TwoLoops() { return Sft(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }

double Bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    ((f(lo) < 0) == (f(mid) < 0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST_SUITE("thermo") {

TEST_CASE("pressure agrees with a dense eigensolver") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Sft g = testing::RandomIrreducible(rng, 2 + trial % 7, 0.3, trial % 3 != 0);
    std::vector<double> w;
    for (int e = 0; e < g.edge_count(); ++e) w.push_back(unif(rng));
    CHECK(Pressure(g, EdgePotential(w)) == doctest::Approx(EigenLogRadius(g, w)).epsilon(1e-10));
  }
}

TEST_CASE("pressure of zero is topological entropy") {
  CHECK(Pressure(Sft::FullShift(3), EdgePotential::Constant(Sft::FullShift(3), 0.0)) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
  Sft golden = Sft::FromMatrix({{1, 1}, {1, 0}});
  CHECK(Pressure(golden, EdgePotential::Constant(golden, 0.0)) ==
        doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
}

TEST_CASE("reducible graphs are rejected") {
  Sft g = Sft::FromMatrix({{1, 1}, {0, 1}});
  CHECK_THROWS_AS(Pressure(g, EdgePotential::Constant(g, 0.0)), Error);
}

TEST_CASE("equilibrium state is a flow-balanced probability with h + int f = P") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Sft g = testing::RandomIrreducible(rng, 3 + trial % 4);
    EdgePotential f = testing::RandomRationalPotential(rng, g);
    EquilibriumMeasure mu = ComputeEquilibrium(g, f);
    double mass = 0.0;
    std::vector<double> in(static_cast<std::size_t>(g.state_count()), 0.0), out = in;
    for (int e = 0; e < g.edge_count(); ++e) {
      double m = mu.edge_mass[static_cast<std::size_t>(e)];
      CHECK(m >= 0.0);
      mass += m;
      out[static_cast<std::size_t>(g.edge(e).from)] += m;
      in[static_cast<std::size_t>(g.edge(e).to)] += m;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    for (int s = 0; s < g.state_count(); ++s) CHECK(in[static_cast<std::size_t>(s)] == doctest::Approx(out[static_cast<std::size_t>(s)]).epsilon(1e-9));
    CHECK(mu.entropy + mu.Integrate(f) == doctest::Approx(Pressure(g, f)).epsilon(1e-9));
  }
}

TEST_CASE("pressure slope matches a central difference") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Sft g = testing::RandomIrreducible(rng, 2 + trial % 5);
    EdgePotential base = testing::RandomRationalPotential(rng, g);
    EdgePotential f = testing::RandomRationalPotential(rng, g);
    const double t = 0.3, h = 1e-5;
    auto p = [&](double x) { return Pressure(g, Combine(1.0, base, x, f)); };
    CHECK(PressureSlope(g, base, f, t) == doctest::Approx((p(t + h) - p(t - h)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("two-shift curve has the closed form log(1 + e^-s)") {
  TwoShift x;
  ManhattanCurve curve(x.g, Roof::Unit(x.g), x.psi);
  for (double s : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
    CHECK(curve.Theta(s) == doctest::Approx(std::log1p(std::exp(-s))).epsilon(1e-10));
    CHECK(curve.ThetaDerivative(s) == doctest::Approx(-std::exp(-s) / (1 + std::exp(-s))).epsilon(1e-8));
    CHECK(std::abs(curve.Residual(s)) <= 1e-10);
  }
}

TEST_CASE("a potential proportional to the roof gives a straight curve") {
  std::mt19937_64 rng(21);
  Sft g = testing::RandomIrreducible(rng, 5);
  std::vector<Rational> r;
  std::uniform_int_distribution<int> len(1, 4);
  for (int e = 0; e < g.edge_count(); ++e) r.emplace_back(len(rng));
  const Rational c(3, 2);
  std::vector<Rational> psi;
  for (const auto& x : r) psi.push_back(c * x);
  Roof roof{EdgePotential(r)};
  ManhattanCurve curve(g, roof, EdgePotential(psi));
  const double delta = DeltaR(g, roof);
  CHECK_FALSE(curve.flat());
  for (double s : {-1.0, 0.0, 0.5, 2.0}) {
    CHECK(curve.Theta(s) == doctest::Approx(delta - 1.5 * s).epsilon(1e-9));
    CHECK(curve.ThetaDerivative(s) == doctest::Approx(-1.5).epsilon(1e-9));
  }
}

TEST_CASE("critical exponent solves the loop determinant") {
  Sft g = TwoLoops();
  Roof roof{EdgePotential(std::vector<Rational>{1, 1, 1, 2})};
  // det(I - [[x, x], [x, x^2]]) = (1 - x)(1 - x^2) - x^2.
  double x = Bisect([](double y) { return (1 - y) * (1 - y * y) - y * y; }, 1e-9, 0.999);
  CHECK(DeltaR(g, roof) == doctest::Approx(-std::log(x)).epsilon(1e-10));
}

TEST_CASE("curve is decreasing, convex and has small residuals") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 8; ++trial) {
    Sft g = testing::RandomIrreducible(rng, 3 + trial % 4);
    EdgePotential r = testing::RandomRationalPotential(rng, g, 1, 5);
    EdgePotential psi = testing::RandomRationalPotential(rng, g, 1, 5);
    ManhattanCurve curve(g, Roof(r), psi);
    auto samples = curve.Sample(-1.0, 1.0, 11);
    REQUIRE(samples.size() == 11);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      CHECK(std::abs(curve.Residual(samples[i].s)) <= 1e-10);
      CHECK(samples[i].derivative < 0.0);
      if (i > 0) CHECK(samples[i].theta < samples[i - 1].theta);
      if (i > 0 && i + 1 < samples.size())
        CHECK(samples[i - 1].theta + samples[i + 1].theta - 2 * samples[i].theta >= -1e-10);
    }
    const double h = 1e-5;
    CHECK(curve.ThetaDerivative(0.2) ==
          doctest::Approx((curve.Theta(0.2 + h) - curve.Theta(0.2 - h)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("rate function of the two-shift is the binary entropy deficit") {
  TwoShift x;
  RateFunction rate(x.g, x.psi);
  CHECK(rate.alpha_min() == 0);
  CHECK(rate.alpha_max() == 1);
  CHECK(rate.entropy() == doctest::Approx(std::log(2.0)));
  for (double eta : {0.1, 0.25, 0.5, 0.8, 0.95}) {
    double expected = std::log(2.0) + eta * std::log(eta) + (1 - eta) * std::log(1 - eta);
    CHECK(rate.Rate(eta) == doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK(rate.Rate(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::isinf(rate.Rate(1.2)));
  CHECK(std::isinf(rate.Rate(-0.1)));
}

TEST_CASE("a potential cohomologous to a constant has a point domain") {
  Sft g = Sft::FullShift(2);
  // psi = 1 + g(to) - g(from): a coboundary plus one.
  std::vector<Rational> v;
  for (const Edge& e : g.edges()) v.emplace_back(1 + 2 * e.to - 2 * e.from);
  EdgePotential psi(v);
  RateFunction rate(g, psi);
  CHECK(rate.degenerate());
  LatticeReport lattice = IsLattice(g, psi);
  CHECK(lattice.lattice);
  CHECK(lattice.constant);
  CHECK(lattice.a == 1);
}

TEST_CASE("lattice data match every short cycle") {
  Sft g = Sft::FullShift(2);
  std::vector<Rational> v;
  for (const Edge& e : g.edges()) v.push_back(e.to == 1 ? Rational(4, 3) : Rational(1, 3));
  EdgePotential psi(v);
  LatticeReport lattice = IsLattice(g, psi);
  REQUIRE(lattice.lattice);
  CHECK_FALSE(lattice.constant);
  CHECK(lattice.verified);
  CHECK(lattice.b == 1);
  // Every cycle sum lies in n a + b Z.
  for (int n = 1; n <= 6; ++n) {
    testing::ForEachClosedPath(g, n, [&](int, const std::vector<int>& path) {
      Rational k = (testing::PathSum(path, v) - n * lattice.a) / lattice.b;
      k.canonicalize();
      CHECK(k.get_den() == 1);
    });
  }
}

TEST_CASE("incommensurable values are not a lattice") {
  // Loops 0, 1 and sqrt 2: their differences have no common period.
  Sft g = Sft::FullShift(3);
  std::vector<double> v;
  for (const Edge& e : g.edges()) v.push_back(e.to == 2 ? std::sqrt(2.0) : e.to);
  LatticeReport lattice = IsLattice(g, EdgePotential(v), false);
  CHECK_FALSE(lattice.lattice);
  CHECK_FALSE(lattice.verified);
}

}  // TEST_SUITE

}  // namespace
}  // namespace mcurve
