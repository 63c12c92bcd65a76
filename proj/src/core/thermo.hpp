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

#ifndef MCURVE_CORE_THERMO_HPP_
#define MCURVE_CORE_THERMO_HPP_

#include <string>
#include <vector>

#include "perron.hpp"
#include "potential.hpp"
#include "rational.hpp"
#include "sft.hpp"

namespace mcurve {

// Tolerances shared by every solver in this module.
struct ThermoConfig {
  double perron_tol = 1e-13;
  long max_iterations = 1000000;
  // Target for |P(-a r - s psi)| at a curve point.
  double root_residual = 1e-12;
  // Largest |t| searched when solving P'(t) = eta.
  double legendre_cap = 1e3;

  PerronOptions perron(bool need_left) const { return {perron_tol, max_iterations, need_left}; }
};

// log of the Perron root of the matrix with entries exp(weights(e)).
double Pressure(const Sft& irreducible, const EdgePotential& weights, const ThermoConfig& config = {});

// P(-a r - s psi).
double PressureTwo(const Sft& irreducible, const Roof& r, const EdgePotential& psi, double a, double s,
                   const ThermoConfig& config = {});

struct EquilibriumMeasure {
  std::vector<double> edge_mass;
  std::vector<double> state_mass;
  double entropy = 0.0;
  double pressure = 0.0;

  double Integrate(const EdgePotential& f) const;
};

EquilibriumMeasure ComputeEquilibrium(const Sft& irreducible, const EdgePotential& weights,
                                      const ThermoConfig& config = {});

// d/dt P(base + t f) at t, from the equilibrium measure.
double PressureSlope(const Sft& irreducible, const EdgePotential& base, const EdgePotential& f, double t,
                     const ThermoConfig& config = {});

struct CurveSample {
  double s = 0.0;
  double theta = 0.0;
  double derivative = 0.0;
};

// The pressure curve s -> theta(s), the root a of P(-a r - s psi) = 0.
class ManhattanCurve {
 public:
  ManhattanCurve(Sft irreducible, Roof r, EdgePotential psi, ThermoConfig config = {});

  double Theta(double s) const;
  // -(int psi dmu) / (int r dmu) at the equilibrium state of the curve point.
  double ThetaDerivative(double s) const;
  double Residual(double s) const;
  std::vector<CurveSample> Sample(double s_begin, double s_end, int count) const;

  const Sft& sft() const { return sft_; }
  const Roof& roof() const { return roof_; }
  const EdgePotential& potential() const { return psi_; }
  bool flat() const { return flat_; }

 private:
  EdgePotential PointWeights(double a, double s) const;

  Sft sft_;
  Roof roof_;
  EdgePotential psi_;
  ThermoConfig config_;
  bool flat_ = false;
};

// L(eta) = sup_t (t eta + h - P(t psi)) where h = P(0).
class RateFunction {
 public:
  RateFunction(Sft irreducible, EdgePotential psi, ThermoConfig config = {});

  const Rational& alpha_min() const { return alpha_min_; }
  const Rational& alpha_max() const { return alpha_max_; }
  double entropy() const { return entropy_; }
  // Potential cohomologous to a constant: the domain is a single point.
  bool degenerate() const { return alpha_min_ == alpha_max_; }
  double mean() const { return mean_; }

  // +infinity outside [alpha_min, alpha_max].
  double Rate(double eta) const;
  // h - L(eta).
  double Growth(double eta) const { return entropy_ - Rate(eta); }
  // The maximizing t; clamped to the search cap at the domain ends.
  double Argmax(double eta) const;
  // t eta + h - P(t psi) at a given t.
  double Objective(double eta, double t) const;

 private:
  Sft sft_;
  EdgePotential psi_;
  ThermoConfig config_;
  Rational alpha_min_;
  Rational alpha_max_;
  double entropy_ = 0.0;
  double mean_ = 0.0;
};

// Entropy of the suspension flow: the root of P(-delta r) = 0.
double DeltaR(const Sft& irreducible, const Roof& r, const ThermoConfig& config = {});

struct LatticeReport {
  bool lattice = false;
  // The potential's periodic data lies on a line: cohomologous to a constant.
  bool constant = false;
  // Exact when every value is rational; otherwise a floating-point verdict.
  bool verified = false;
  Rational a;
  Rational b;
  double a_approx = 0.0;
  double b_approx = 0.0;
  int period = 0;
  std::string note;
};

// Decides whether psi^n + a n lies in bZ on all periodic points, with b maximal.
LatticeReport IsLattice(const Sft& irreducible, const EdgePotential& psi, bool exact = true);

}  // namespace mcurve

#endif  // MCURVE_CORE_THERMO_HPP_
