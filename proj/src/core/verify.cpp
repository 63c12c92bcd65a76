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


#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "cycle_mean.hpp"
#include "diophantine.hpp"
#include "error.hpp"
#include "freegroup.hpp"
#include "io.hpp"
#include "orbits.hpp"
#include "thermo.hpp"

namespace mcurve {
namespace {

class Suite {
 public:
  explicit Suite(VerifyReport* report) : report_(report) {}

  // Records the check; exceptions count as failures with their message.
  void Run(const std::string& name, const std::function<std::string(bool*)>& body) {
    CheckResult r{name, false, ""};
    try {
      bool ok = true;
      r.detail = body(&ok);
      r.passed = ok;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    report_->checks.push_back(std::move(r));
  }

 private:
  VerifyReport* report_;
};

bool Close(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(y)); }

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport VerifyAutomaton(const DualMetricAutomaton& automaton, const VerifyOptions& options) {
  VerifyReport report;
  Suite suite(&report);
  const double tol = options.tolerance;

  AutomatonShift shift;
  bool have_shift = false;
  suite.Run("maximal component", [&](bool* ok) {
    AutomatonComponents comps = AnalyzeComponents(automaton);
    if (comps.maximal.empty()) {
      *ok = false;
      return std::string("no recurrent component");
    }
    shift = MaximalComponentShift(automaton, MultiEdgePolicy::kExpand);
    report.component = shift.component;
    have_shift = true;
    std::ostringstream os;
    os << "component " << shift.component << " of " << comps.members.size() << ", spectral radius "
       << FormatReal(comps.global_radius) << (shift.expanded ? " (expanded to edge shift)" : "");
    return os.str();
  });
  if (!have_shift) return report;
  const Sft& g = shift.sft;
  const EdgePotential zero = EdgePotential::Constant(g, Rational(0));

  suite.Run("equilibrium state", [&](bool* ok) {
    EquilibriumMeasure mu = ComputeEquilibrium(g, zero);
    double total = 0.0, worst = 0.0;
    for (double m : mu.edge_mass) total += m;
    std::vector<double> in(static_cast<std::size_t>(g.state_count()), 0.0), out(in);
    for (int e = 0; e < g.edge_count(); ++e) {
      out[static_cast<std::size_t>(g.edge(e).from)] += mu.edge_mass[static_cast<std::size_t>(e)];
      in[static_cast<std::size_t>(g.edge(e).to)] += mu.edge_mass[static_cast<std::size_t>(e)];
    }
    for (std::size_t s = 0; s < in.size(); ++s) worst = std::max(worst, std::abs(in[s] - out[s]));
    *ok = Close(total, 1.0, tol) && worst <= tol && Close(mu.entropy, mu.pressure, tol);
    return "mass " + FormatReal(total) + ", flow imbalance " + FormatReal(worst) + ", entropy " +
           FormatReal(mu.entropy) + " vs pressure " + FormatReal(mu.pressure);
  });

  suite.Run("pressure derivative", [&](bool* ok) {
    double worst = 0.0;
    for (double t : {-0.5, 0.0, 0.5}) {
      const double h = 1e-5;
      auto pressure_at = [&](double u) {
        std::vector<double> w(static_cast<std::size_t>(g.edge_count()));
        for (int e = 0; e < g.edge_count(); ++e) w[static_cast<std::size_t>(e)] = u * shift.psi[e];
        return Pressure(g, EdgePotential(w));
      };
      const double fd = (pressure_at(t + h) - pressure_at(t - h)) / (2 * h);
      const double an = PressureSlope(g, zero, shift.psi, t);
      worst = std::max(worst, std::abs(fd - an));
    }
    *ok = worst <= tol;
    return "max |analytic - finite difference| = " + FormatReal(worst);
  });

  MeanCycleExtremes ext;
  suite.Run("extremal means", [&](bool* ok) {
    ext = ExtremalMeans(g, shift.psi);
    *ok = IsClosedPath(g, ext.min_witness) && IsClosedPath(g, ext.max_witness) &&
          BirkhoffMean(ext.min_witness, shift.psi) == ext.alpha_min &&
          BirkhoffMean(ext.max_witness, shift.psi) == ext.alpha_max;
    // Brute force over short periodic points.
    for (int n = 1; n <= options.cycle_length && *ok; ++n) {
      for (const Cycle& c : EnumerateCycles(g, n)) {
        Rational m = BirkhoffMean(c, shift.psi);
        if (m < ext.alpha_min || m > ext.alpha_max) *ok = false;
      }
    }
    return "alpha_min " + ToString(ext.alpha_min) + ", alpha_max " + ToString(ext.alpha_max);
  });

  suite.Run("manhattan curve", [&](bool* ok) {
    ManhattanCurve curve(g, shift.roof(), shift.psi);
    const double theta0 = curve.Theta(0.0);
    const double span = std::max(1.0, std::abs(theta0));
    const int n = std::max(3, options.curve_samples);
    auto samples = curve.Sample(-span, span, n);
    double worst_residual = 0.0, worst_convexity = INFINITY;
    for (const auto& s : samples) worst_residual = std::max(worst_residual, std::abs(curve.Residual(s.s)));
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
      const double second = samples[i - 1].theta - 2 * samples[i].theta + samples[i + 1].theta;
      worst_convexity = std::min(worst_convexity, second);
    }
    const double delta = DeltaR(g, shift.roof());
    *ok = worst_residual <= 1e-10 && worst_convexity >= -tol && Close(theta0, delta, tol);
    return "theta(0) = " + FormatReal(theta0) + ", max residual " + FormatReal(worst_residual) +
           ", min second difference " + FormatReal(worst_convexity);
  });

  suite.Run("rate function", [&](bool* ok) {
    RateFunction rate(g, shift.psi);
    const double at_mean = rate.Rate(rate.mean());
    *ok = std::abs(at_mean) <= tol;
    if (!rate.degenerate()) {
      const double lo = rate.alpha_min().get_d(), hi = rate.alpha_max().get_d();
      for (int i = 1; i < 8; ++i) {
        const double eta = lo + (hi - lo) * i / 8.0;
        if (!(rate.Rate(eta) >= -tol)) *ok = false;
      }
      if (!std::isinf(rate.Rate(hi + (hi - lo)))) *ok = false;
    }
    return "rate at mean " + FormatReal(at_mean) + ", entropy " + FormatReal(rate.entropy());
  });

  if (shift.psi.is_exact()) {
    suite.Run("exact counts", [&](bool* ok) {
      const int n_max = std::min(options.count_length, 12);
      TracePolynomials traces(g, shift.psi, n_max);
      *ok = true;
      for (int n = 1; n <= n_max; ++n) {
        if (traces.Total(n) != TraceOfPower(g, n)) *ok = false;
      }
      for (int n = 1; n <= std::min(options.cycle_length, n_max); ++n) {
        auto cycles = EnumerateCycles(g, n);
        if (Integer(static_cast<unsigned long>(cycles.size())) != traces.Total(n)) *ok = false;
      }
      return "trace totals match tr(A^n) for n <= " + std::to_string(n_max);
    });
  }

  auto base_it = automaton.metadata.find("base_generators");
  auto other_it = automaton.metadata.find("other_generators");
  if (base_it != automaton.metadata.end() && other_it != automaton.metadata.end()) {
    suite.Run("dual potential contract", [&](bool* ok) {
      const GenSet base = GenSet::Parse(base_it->second);
      const GenSet other = GenSet::Parse(other_it->second, base.rank());
      long checked = 0;
      std::map<FreeWord, std::pair<Rational, Rational>> cache;
      *ok = true;
      std::string first_failure;
      for (int n = 1; n <= options.cycle_length && *ok; ++n) {
        for (const Cycle& c : EnumerateCycles(g, n)) {
          const std::vector<int> states = StatesOf(g, c);
          if (*std::min_element(states.begin(), states.end()) != c.start_state) continue;
          FreeWord word;
          for (const auto& label : CycleLabels(automaton, shift, c.edges)) word = word * FreeWord::Parse(label);
          ++checked;
          const FreeWord key = CanonicalRotation(word.CyclicCore());
          auto it = cache.find(key);
          if (it == cache.end()) {
            it = cache.emplace(key, std::make_pair(TranslationLength(key, other), TranslationLength(key, base))).first;
          }
          const auto& [other_len, base_len] = it->second;
          if (other_len != BirkhoffSum(c, shift.psi) || base_len != BirkhoffSum(c, shift.r)) {
            *ok = false;
            first_failure = "; mismatch on " + word.ToString();
            break;
          }
        }
      }
      return std::to_string(checked) + " cycles checked up to length " + std::to_string(options.cycle_length) +
             first_failure;
    });
  }
  return report;
}

}  // namespace mcurve
