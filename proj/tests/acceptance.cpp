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


// End-to-end acceptance checks. Prints one [PASS]/[FAIL] line per criterion
// and exits non-zero when any criterion fails.

#include <gmpxx.h>

#include <cctype>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "diophantine.hpp"
#include "error.hpp"
#include "freegroup.hpp"
#include "orbits.hpp"
#include "thermo.hpp"

namespace mcurve {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// exp of the closed-form curve for the pair ({a, b}, {a, b, ab}).
double ClosedForm(double t) {
  const double x = std::exp(-t);
  return 0.5 * x * (x + std::sqrt(x * (x + 8.0)) + 4.0);
}

const double kLog3 = std::log(3.0);
const double kLog4 = std::log(4.0);

GenSet Standard() { return GenSet::Standard(2); }
GenSet Star() { return GenSet::Parse("a,b,ab", 2); }

// A coding geodesic for `base` carrying lengths for `other`.
struct Coding {
  DualPotentialReport dual;
  AutomatonShift shift;
};

Coding MakeCoding(const GenSet& base, const GenSet& other, int verify_cycles_to) {
  GeodesicAutomaton geodesics = BuildGeodesicAutomaton(base, -1, 8);
  Coding c{DualPotential(geodesics, other, 1, verify_cycles_to), {}};
  c.shift = MaximalComponentShift(c.dual.automaton, MultiEdgePolicy::kExpand);
  return c;
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

class Runner {
 public:
  void Run(int id, const std::string& title, const std::function<Outcome()>& body) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed_ += o.passed ? 0 : 1;
    std::printf("[%s] %2d %s (%.2fs): %s\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), Seconds(start),
                o.detail.c_str());
    std::fflush(stdout);
  }
  int failed() const { return failed_; }

 private:
  int failed_ = 0;
};

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[1024];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// Maximizes a concave function on [lo, hi] by golden-section search.
double MaximizeConcave(const std::function<double(double)>& f, double lo, double hi, double* argmax) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi, c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 120; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  *argmax = 0.5 * (a + b);
  return f(*argmax);
}

// Cyclically reduced length of a word in a, b, A, B.
long CoreLength(const std::string& word) {
  std::vector<char> s;
  for (char c : word) {
    if (!s.empty() && s.back() != c && std::tolower(s.back()) == std::tolower(c)) {
      s.pop_back();
    } else {
      s.push_back(c);
    }
  }
  std::size_t i = 0, j = s.size();
  while (j - i >= 2 && s[i] != s[j - 1] && std::tolower(s[i]) == std::tolower(s[j - 1])) {
    ++i;
    --j;
  }
  return static_cast<long>(j - i);
}

// Translation length for {a, b, ab}: cyclic core length minus the cyclic
// occurrences of ab and BA.
long StarLength(const std::string& word) {
  std::vector<char> s;
  for (char c : word) {
    if (!s.empty() && s.back() != c && std::tolower(s.back()) == std::tolower(c)) {
      s.pop_back();
    } else {
      s.push_back(c);
    }
  }
  std::size_t i = 0, j = s.size();
  while (j - i >= 2 && s[i] != s[j - 1] && std::tolower(s[i]) == std::tolower(s[j - 1])) {
    ++i;
    --j;
  }
  const std::string core(s.begin() + static_cast<long>(i), s.begin() + static_cast<long>(j));
  const std::size_t n = core.size();
  long saved = 0;
  for (std::size_t k = 0; n >= 2 && k < n; ++k) {
    const char x = core[k], y = core[(k + 1) % n];
    if ((x == 'a' && y == 'b') || (x == 'B' && y == 'A')) ++saved;
  }
  return static_cast<long>(n) - saved;
}

int Main() {
  Runner runner;
  const auto setup = Clock::now();
  // Coding geodesic for {a, b, ab}, lengths for {a, b}; and the reverse.
  // Exact {a, b, ab} translation lengths are the costly part of checking the
  // reverse coding, so its build-time check stops at cycle length 8.
  Coding star = MakeCoding(Star(), Standard(), 10);
  Coding standard = MakeCoding(Standard(), Star(), 8);
  const double setup_seconds = Seconds(setup);
  ManhattanCurve curve_star(star.shift.sft, star.shift.roof(), star.shift.psi);
  ManhattanCurve curve_standard(standard.shift.sft, standard.shift.roof(), standard.shift.psi);

  runner.Run(1, "closed-form Manhattan curve", [&] {
    const auto start = Clock::now();
    double worst_a = 0.0, worst_b = 0.0;
    for (int i = 0; i < 25; ++i) {
      const double s = kLog4 * i / 24.0;
      const double a_star = Pressure(star.shift.sft, Combine(0.0, star.shift.psi, -s, star.shift.psi));
      worst_a = std::max(worst_a, std::abs(std::exp(a_star) - ClosedForm(s)));
      const double a = Pressure(standard.shift.sft, Combine(0.0, standard.shift.psi, -s, standard.shift.psi));
      worst_b = std::max(worst_b, std::abs(ClosedForm(a) - std::exp(s)));
    }
    const double a0 = Pressure(standard.shift.sft, Combine(0.0, standard.shift.psi, 0.0, standard.shift.psi));
    const double a1 = Pressure(standard.shift.sft, Combine(0.0, standard.shift.psi, -kLog4, standard.shift.psi));
    const double seconds = Seconds(start) + setup_seconds;
    const bool ok = worst_a <= 1e-8 && worst_b <= 1e-8 && std::abs(a0 - kLog3) <= 1e-8 && std::abs(a1) <= 1e-8 &&
                    seconds < 10.0;
    return Outcome{ok, Fmt("max|exp P_A(-s psi) - F(s)| = %.2e, max|F(a(s)) - e^s| = %.2e, a(0) - log3 = %.1e, "
                           "a(log4) = %.1e, %.2fs including codings",
                           worst_a, worst_b, a0 - kLog3, a1, seconds)};
  });

  runner.Run(2, "growth rates of the geodesic automata", [&] {
    double radius[2];
    int i = 0;
    for (const GenSet& gens : {Standard(), Star()}) {
      GeodesicAutomaton a = BuildGeodesicAutomaton(gens, -1, 8);
      AutomatonComponents comp = AnalyzeComponents(a.automaton);
      radius[i++] = comp.global_radius;
    }
    const bool ok = std::abs(radius[0] - 3.0) <= 1e-9 && std::abs(radius[1] - 4.0) <= 1e-9;
    return Outcome{ok, Fmt("standard %.12f, with ab %.12f", radius[0], radius[1])};
  });

  runner.Run(3, "slope at zero", [&] {
    const double direct = -curve_star.ThetaDerivative(0.0);
    // The two curves are inverse functions: theta_A'(0) = 1/theta_B'(log 4).
    const double dual = -1.0 / curve_standard.ThetaDerivative(kLog4);
    const bool ok = std::abs(direct - 4.0 / 3) <= 1e-6 && std::abs(dual - 4.0 / 3) <= 1e-6 &&
                    std::abs(curve_standard.Theta(kLog4)) <= 1e-9;
    return Outcome{ok, Fmt("direct %.12f, via inverse curve %.12f", direct, dual)};
  });

  runner.Run(4, "large-deviation rates", [&] {
    double t_star = 0.0;
    const double sup = MaximizeConcave(
        [&](double t) { return kLog4 - kLog4 / kLog3 * t - curve_star.Theta(t); }, -5.0, 5.0, &t_star);
    const double lambda = kLog3 * sup;
    const double closed = std::log(16.0) * std::log(std::log(4.0 / 3)) +
                          std::log(9.0) * std::log(std::log(1.5) / std::log(4.0 / 3)) +
                          kLog4 * (std::log(2.0) - std::log(std::log(1.5) * std::log(2.0)));
    const double first = kLog4 - lambda / kLog3, second = kLog3 - lambda / kLog4;
    const bool ok = std::abs(lambda - closed) <= 1e-8 && std::abs(first - 1.3679878759) <= 1e-6 &&
                    std::abs(second - 1.0841047424) <= 1e-6;
    return Outcome{ok, Fmt("Lambda = %.12f (closed form %.12f), log4 - Lambda/log3 = %.10f, "
                           "log3 - Lambda/log4 = %.10f",
                           lambda, closed, first, second)};
  });

  runner.Run(5, "extremal means and module constant", [&] {
    MeanCycleExtremes ext = ExtremalMeans(star.shift.sft, star.shift.psi);
    const int k = star.shift.sft.state_count();
    const int m = *Primitivity(star.shift.sft).primitivity_index;
    ShrinkConstant c = ModuleShrinkConstant(m, k, ext.alpha_max - ext.alpha_min);
    const bool ok = ext.alpha_min == 1 && ext.alpha_max == 2 && k == 6 && m == 2 && c.numerator == 592 &&
                    c.numerator * c.numerator <= 5 * 300 * 300;
    return Outcome{ok, Fmt("alpha = [%s, %s], k = %d, M = %d, constant = %s/sqrt5 = %.4f", ToString(ext.alpha_min).c_str(),
                           ToString(ext.alpha_max).c_str(), k, m, ToString(c.numerator).c_str(), c.value())};
  });

  runner.Run(6, "shrinking certificates", [&] {
    struct Target {
      std::string name;
      EtaTarget eta;
    };
    const std::vector<Target> targets = {{"11/10", EtaTarget::Exact(Rational(11, 10))},
                                         {"4/3", EtaTarget::Exact(Rational(4, 3))},
                                         {"golden", EtaTarget::GoldenRatio()},
                                         {"19/10", EtaTarget::Exact(Rational(19, 10))}};
    mpf_class five(5, 2048);
    const mpf_class golden = (1 + sqrt(five)) / 2;
    int failures = 0;
    std::ostringstream summary;
    for (const auto& target : targets) {
      ShrinkReport report = ShrinkOrbits(star.shift.sft, star.shift.psi, target.eta, 6);
      int good = 0, materialized = 0;
      for (const ShrinkCertificate& c : report.certificates) {
        // Recompute the bound from the certificate's own data.
        bool ok = c.SelfCheck(star.shift.sft, star.shift.psi) && c.satisfied &&
                  5 * c.error_bound * c.error_bound * c.period * c.period * c.period * c.period <= 592 * 592;
        if (target.eta.is_rational()) {
          ok = ok && Abs(c.mean - target.eta.rational()) <= c.error_bound;
        } else {
          ok = ok && abs(mpf_class(c.mean, 2048) - golden) <= mpf_class(c.error_bound, 2048);
        }
        if (c.period <= 100000) {
          Cycle orbit = c.Materialize();
          ok = ok && IsClosedPath(star.shift.sft, orbit) && BirkhoffMean(orbit, star.shift.psi) == c.mean;
          ++materialized;
        }
        good += ok ? 1 : 0;
        failures += ok ? 0 : 1;
      }
      if (good < 5) ++failures;
      summary << target.name << ": " << good << "/" << report.certificates.size() << " ok (" << materialized
              << " materialized); ";
    }
    return Outcome{failures == 0, summary.str() + Fmt("%d failure(s)", failures)};
  });

  runner.Run(7, "binomial window counts", [&] {
    Sft g = Sft::FullShift(2);
    std::vector<Rational> v;
    for (const Edge& e : g.edges()) v.emplace_back(e.to == 1 ? 1 : 0);
    EdgePotential psi(v);
    TracePolynomials tp(g, psi, 20);
    int mismatches = 0;
    for (int n = 1; n <= 20; ++n) {
      Integer sum = 0;
      for (int m = 0; m <= n; ++m) {
        Rational eta(m, n);
        eta.canonicalize();
        Integer count = tp.CountWindow(n, eta, 0), binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
        mismatches += count == binom ? 0 : 1;
        sum += count;
      }
      mismatches += sum == (Integer(1) << n) && tp.Total(n) == (Integer(1) << n) ? 0 : 1;
    }
    return Outcome{mismatches == 0, Fmt("%d mismatch(es) over n <= 20", mismatches)};
  });

  runner.Run(8, "window growth against the rate function", [&] {
    const Rational eta(3, 2), delta(1, 12);
    RateFunction rate(star.shift.sft, star.shift.psi);
    const double limit = rate.Growth(1.5);
    TracePolynomials tp(star.shift.sft, star.shift.psi, 24);
    std::vector<double> gaps;
    std::ostringstream detail;
    detail << Fmt("h - L(3/2) = %.8f;", limit);
    for (int n : {12, 16, 20, 24}) {
      const double value = LogInteger(tp.CountWindow(n, eta, delta)) / n;
      gaps.push_back(std::abs(value - limit));
      detail << Fmt(" n=%d: %.8f (gap %.4f)", n, value, gaps.back());
    }
    int increases = 0;
    for (std::size_t i = 1; i < gaps.size(); ++i) increases += gaps[i] > gaps[i - 1] ? 1 : 0;
    const bool ok = gaps.back() <= 0.12 && increases <= 1;
    detail << Fmt("; non-monotone steps = %d", increases);
    return Outcome{ok, detail.str()};
  });

  runner.Run(9, "rational orbits", [&] {
    bool ok = true;
    std::ostringstream detail;
    for (const Rational& w : {Rational(5, 4), Rational(3, 2), Rational(7, 4)}) {
      Cycle c = RationalOrbit(star.shift.sft, star.shift.psi, w.get_num(), w.get_den());
      const bool exact = IsClosedPath(star.shift.sft, c) && BirkhoffMean(c, star.shift.psi) == w;
      TracePolynomials tp(star.shift.sft, star.shift.psi, c.period());
      Integer count = tp.CountWindow(c.period(), w, 0);
      ok = ok && exact && count >= 1;
      detail << ToString(w) << ": period " << c.period() << ", exact-sum count " << count.get_str() << "; ";
    }
    return Outcome{ok, detail.str()};
  });

  runner.Run(10, "dual-potential contract on all cycles up to length 10", [&] {
    const Sft& g = star.shift.sft;
    std::vector<std::string> label(static_cast<std::size_t>(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) {
      label[static_cast<std::size_t>(e)] = CycleLabels(star.dual.automaton, star.shift, {e}).front();
    }
    long cycles = 0, psi_mismatch = 0, r_mismatch = 0;
    std::vector<int> path;
    std::function<void(int, int, int)> walk = [&](int start, int at, int max_len) {
      if (!path.empty() && at == start) {
        std::string word;
        Rational psi = 0, r = 0;
        for (int e : path) {
          word += label[static_cast<std::size_t>(e)];
          psi += star.shift.psi.exact()[static_cast<std::size_t>(e)];
          r += star.shift.r.exact()[static_cast<std::size_t>(e)];
        }
        ++cycles;
        psi_mismatch += psi == CoreLength(word) ? 0 : 1;
        r_mismatch += r == StarLength(word) ? 0 : 1;
      }
      if (static_cast<int>(path.size()) == max_len) return;
      for (int e : g.out_edges(at)) {
        path.push_back(e);
        walk(start, g.edge(e).to, max_len);
        path.pop_back();
      }
    };
    for (int s = 0; s < g.state_count(); ++s) walk(s, s, 10);
    const bool ok = cycles > 0 && psi_mismatch == 0 && r_mismatch == 0;
    return Outcome{ok, Fmt("%ld cycles, %ld psi mismatch(es), %ld roof mismatch(es)", cycles, psi_mismatch,
                           r_mismatch)};
  });

  runner.Run(11, "empirical length ratio at T = 14", [&] {
    TauReport tau = TauEmpirical(2, Star(), Standard(), 14);
    const double slope = -curve_star.ThetaDerivative(0.0);
    const double rel = std::abs(tau.tau.get_d() - slope) / slope;
    return Outcome{rel <= 0.05, Fmt("tau = %s = %.8f over %s classes, -theta'(0) = %.8f, relative gap %.2e",
                                    ToString(tau.tau).c_str(), tau.tau.get_d(), tau.classes.get_str().c_str(), slope,
                                    rel)};
  });

  runner.Run(12, "analytic derivatives and curve residuals", [&] {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> states(2, 8), num(-6, 6), pos(1, 6), den(1, 4);
    std::bernoulli_distribution coin(0.3);
    double worst_slope = 0.0, worst_theta = 0.0, worst_residual = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int k = states(rng);
      // A Hamiltonian cycle keeps the graph irreducible.
      std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
      for (int i = 0; i < k; ++i) {
        adjacency[static_cast<std::size_t>(i)][static_cast<std::size_t>((i + 1) % k)] = 1;
        for (int j = 0; j < k; ++j)
          if (coin(rng)) adjacency[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
      }
      Sft g = Sft::FromMatrix(adjacency);
      std::vector<Rational> f, base, r, psi;
      for (int e = 0; e < g.edge_count(); ++e) {
        auto q = [&](int p) {
          Rational x(p, den(rng));
          x.canonicalize();
          return x;
        };
        f.push_back(q(num(rng)));
        base.push_back(q(num(rng)));
        r.push_back(q(pos(rng)));
        psi.push_back(q(pos(rng)));
      }
      EdgePotential fp(f), bp(base);
      const double h = 1e-5;
      for (double t : {-0.7, 0.0, 0.4}) {
        auto p = [&](double x) { return Pressure(g, Combine(1.0, bp, x, fp)); };
        worst_slope = std::max(worst_slope, std::abs(PressureSlope(g, bp, fp, t) - (p(t + h) - p(t - h)) / (2 * h)));
      }
      ManhattanCurve curve(g, Roof(EdgePotential(r)), EdgePotential(psi));
      for (const CurveSample& s : curve.Sample(-1.0, 1.0, 9)) {
        worst_residual = std::max(worst_residual, std::abs(curve.Residual(s.s)));
        const double fd = (curve.Theta(s.s + h) - curve.Theta(s.s - h)) / (2 * h);
        worst_theta = std::max(worst_theta, std::abs(s.derivative - fd));
      }
    }
    const bool ok = worst_slope <= 1e-6 && worst_theta <= 1e-6 && worst_residual <= 1e-10;
    return Outcome{ok, Fmt("max slope error %.2e, max curve-slope error %.2e, max residual %.2e", worst_slope,
                           worst_theta, worst_residual)};
  });

  runner.Run(13, "geodesic automata to depth 12", [&] {
    std::ostringstream detail;
    bool ok = true;
    for (const GenSet& gens : {Standard(), Star()}) {
      GeodesicAutomaton a = BuildGeodesicAutomaton(gens, -1, 12);
      const bool match = a.sphere_sizes == CayleySphereSizes(gens, 12);
      ok = ok && match && a.verify_depth >= 12;
      detail << gens.ToString() << ": " << a.state_count() << " states, spheres "
             << (match ? "match" : "MISMATCH") << " to depth 12; ";
    }
    try {
      BuildGeodesicAutomaton(Star(), 0, 12);
      ok = false;
      detail << "rho = 0 returned an automaton";
    } catch (const Error& e) {
      ok = ok && e.kind() == ErrorKind::kVerification;
      detail << "rho = 0 fails: " << e.what();
    }
    return Outcome{ok, detail.str()};
  });

  std::printf("%d of 13 criteria failed\n", runner.failed());
  return runner.failed() == 0 ? 0 : 1;
}

}  // namespace
}  // namespace mcurve

int main() { return mcurve::Main(); }
