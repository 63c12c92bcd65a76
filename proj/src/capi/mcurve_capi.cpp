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


#include "mcurve/mcurve.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "cycle_mean.hpp"
#include "diophantine.hpp"
#include "error.hpp"
#include "freegroup.hpp"
#include "io.hpp"
#include "orbits.hpp"
#include "thermo.hpp"
#include "verify.hpp"

struct mc_automaton {
  mcurve::DualMetricAutomaton automaton;
  std::vector<std::string> warnings;
};

struct mc_table {
  mcurve::ResultTable table;
  std::vector<std::vector<std::string>> text;
};

namespace {

using namespace mcurve;

thread_local std::string g_last_error;

constexpr long kDefaultBudget = 50000000;

template <class Body>
mc_status Guard(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return MC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<mc_status>(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory; lower the problem size or the budget";
    return MC_ERR_BUDGET;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return MC_ERR_INTERNAL;
  }
}

void Require(bool condition, const char* message) {
  if (!condition) Fail(ErrorKind::kUsage, message);
}

mc_options Options(const mc_options* options) {
  mc_options out;
  mc_options_init(&out);
  if (options) out = *options;
  return out;
}

long Budget(const mc_options& options) {
  if (options.budget > 0) return static_cast<long>(options.budget);
  if (const char* env = std::getenv("MCURVE_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

MetricBudget Metric(const mc_options& options) {
  MetricBudget b;
  b.max_states = Budget(options);
  return b;
}

OrbitLimits Limits(const mc_options& options) {
  OrbitLimits l;
  l.max_points = Budget(options);
  l.max_coefficients = Budget(options);
  return l;
}

std::string CellText(const Cell& c) {
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<Rational>(c)) return ToString(std::get<Rational>(c));
  if (std::holds_alternative<double>(c)) return FormatReal(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "";
}

mc_table* Finish(ResultTable table) {
  auto* t = new mc_table{std::move(table), {}};
  for (const auto& row : t->table.rows) {
    std::vector<std::string> text;
    for (const auto& c : row) text.push_back(CellText(c));
    t->text.push_back(std::move(text));
  }
  return t;
}

char* Duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Decimal text is read exactly, so a window edge typed as 0.1 is 1/10.
Rational ParseReal(const char* text, const char* what) {
  if (!text || !*text) Fail(ErrorKind::kUsage, std::string("missing value for ") + what);
  auto q = TryParseRational(text);
  if (!q) Fail(ErrorKind::kUsage, "invalid " + std::string(what) + " '" + text + "'");
  return *q;
}

EtaTarget ParseTarget(const char* text) {
  const std::string s = text ? text : "";
  if (s == "golden" || s == "phi") return EtaTarget::GoldenRatio();
  if (s.rfind("surd:", 0) == 0) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s.substr(5)) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
    Require(parts.size() == 3, "surd target must be surd:p,q,d");
    return EtaTarget::Surd(ParseRational(parts[0]), ParseRational(parts[1]), Integer(parts[2]));
  }
  return EtaTarget::Exact(ParseReal(text, "eta"));
}

const DualMetricAutomaton& Get(const mc_automaton* a) {
  if (!a) Fail(ErrorKind::kUsage, "null automaton");
  return a->automaton;
}

AutomatonShift Shift(const mc_automaton* a) { return MaximalComponentShift(Get(a), MultiEdgePolicy::kExpand); }

void Describe(ResultTable& t, const AutomatonShift& shift) {
  t.notes["component"] = std::to_string(shift.component);
  t.notes["states"] = std::to_string(shift.sft.state_count());
  if (shift.expanded) t.notes["coding"] = "edge shift of a component with parallel edges";
}

std::string JoinLabels(const DualMetricAutomaton& a, const AutomatonShift& shift, const std::vector<int>& edges) {
  std::string out;
  for (const auto& l : CycleLabels(a, shift, edges)) out += (out.empty() ? "" : ".") + l;
  return out;
}

std::vector<std::size_t> Order(std::size_t n, unsigned long long seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

std::vector<double> Grid(double lo, double hi, int count) {
  Require(count >= 1, "sample count must be positive");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  return out;
}

}  // namespace

extern "C" {

void mc_options_init(mc_options* options) {
  if (!options) return;
  options->tolerance = 1e-6;
  options->samples = 25;
  options->budget = 0;
  options->seed = 0;
}

const char* mc_version(void) { return "0.1.0"; }
const char* mc_last_error(void) { return g_last_error.c_str(); }

const char* mc_status_name(mc_status status) {
  switch (status) {
    case MC_OK: return "ok";
    case MC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MC_ERR_USAGE: return "usage error";
    case MC_ERR_BUDGET: return "budget exceeded";
    case MC_ERR_VERIFICATION: return "verification failed";
    case MC_ERR_PARSE: return "parse error";
    case MC_ERR_DOMAIN: return "domain error";
    case MC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int mc_exit_code(mc_status status) {
  switch (status) {
    case MC_OK: return 0;
    case MC_ERR_USAGE: return 2;
    case MC_ERR_BUDGET: return 3;
    case MC_ERR_VERIFICATION: return 4;
    default: return 1;
  }
}

void mc_string_free(char* text) { std::free(text); }

mc_status mc_automaton_load(const char* path, mc_automaton** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    LoadedAutomaton loaded = LoadAutomaton(path);
    *out = new mc_automaton{std::move(loaded.automaton), std::move(loaded.warnings)};
  });
}

mc_status mc_automaton_parse(const char* json_text, mc_automaton** out) {
  return Guard([&] {
    Require(json_text && out, "null argument");
    LoadedAutomaton loaded = ParseAutomaton(json_text);
    *out = new mc_automaton{std::move(loaded.automaton), std::move(loaded.warnings)};
  });
}

mc_status mc_automaton_save(const mc_automaton* automaton, const char* path) {
  return Guard([&] {
    Require(path != nullptr, "null path");
    SaveAutomaton(Get(automaton), path);
  });
}

mc_status mc_automaton_to_json(const mc_automaton* automaton, char** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    *out = Duplicate(SerializeAutomaton(Get(automaton)));
  });
}

void mc_automaton_free(mc_automaton* automaton) { delete automaton; }

size_t mc_automaton_state_count(const mc_automaton* a) { return a ? a->automaton.state_names.size() : 0; }
size_t mc_automaton_edge_count(const mc_automaton* a) { return a ? a->automaton.edges.size() : 0; }
size_t mc_automaton_warning_count(const mc_automaton* a) { return a ? a->warnings.size() : 0; }

const char* mc_automaton_warning(const mc_automaton* a, size_t index) {
  if (!a || index >= a->warnings.size()) return nullptr;
  return a->warnings[index].c_str();
}

size_t mc_table_rows(const mc_table* t) { return t ? t->table.rows.size() : 0; }
size_t mc_table_columns(const mc_table* t) { return t ? t->table.columns.size() : 0; }

const char* mc_table_column_name(const mc_table* t, size_t column) {
  if (!t || column >= t->table.columns.size()) return nullptr;
  return t->table.columns[column].c_str();
}

const char* mc_table_cell_text(const mc_table* t, size_t row, size_t column) {
  if (!t || row >= t->text.size() || column >= t->table.columns.size()) return nullptr;
  return t->text[row][column].c_str();
}

mc_status mc_table_cell_double(const mc_table* t, size_t row, size_t column, double* out) {
  return Guard([&] {
    Require(t && out, "null argument");
    Require(row < t->table.rows.size() && column < t->table.columns.size(), "cell index out of range");
    const Cell& c = t->table.rows[row][column];
    if (std::holds_alternative<double>(c)) {
      *out = std::get<double>(c);
    } else if (std::holds_alternative<Rational>(c)) {
      *out = std::get<Rational>(c).get_d();
    } else if (std::holds_alternative<long long>(c)) {
      *out = static_cast<double>(std::get<long long>(c));
    } else if (std::holds_alternative<bool>(c)) {
      *out = std::get<bool>(c) ? 1.0 : 0.0;
    } else {
      Fail(ErrorKind::kInvalidArgument, "cell is not numeric");
    }
  });
}

mc_status mc_table_to_json(const mc_table* t, char** out) {
  return Guard([&] {
    Require(t && out, "null argument");
    *out = Duplicate(TableToJson(t->table));
  });
}

mc_status mc_table_to_csv(const mc_table* t, char** out) {
  return Guard([&] {
    Require(t && out, "null argument");
    *out = Duplicate(TableToCsv(t->table));
  });
}

void mc_table_free(mc_table* table) { delete table; }

mc_status mc_components(const mc_automaton* automaton, mc_table** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    const auto& a = Get(automaton);
    AutomatonComponents comps = AnalyzeComponents(a);
    ResultTable t({"component", "size", "states", "recurrent", "spectral_radius", "maximal"});
    for (std::size_t c = 0; c < comps.members.size(); ++c) {
      std::string names;
      for (int s : comps.members[c]) names += (names.empty() ? "" : " ") + a.state_names[static_cast<std::size_t>(s)];
      const bool maximal = std::find(comps.maximal.begin(), comps.maximal.end(), static_cast<int>(c)) != comps.maximal.end();
      t.AddRow({static_cast<long long>(c), static_cast<long long>(comps.members[c].size()), names,
                static_cast<bool>(comps.recurrent[c]), comps.spectral_radius[c], maximal});
    }
    t.notes["parallel_edges"] = HasParallelEdges(a) ? "yes" : "no";
    *out = Finish(std::move(t));
  });
}

mc_status mc_pressure(const mc_automaton* automaton, double a, double s_begin, double s_end,
                      const mc_options* options, mc_table** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    const mc_options opt = Options(options);
    AutomatonShift shift = Shift(automaton);
    const Roof roof = shift.roof();
    std::vector<double> grid = Grid(s_begin, s_end, opt.samples);
    std::vector<std::vector<Cell>> rows(grid.size());
    for (std::size_t i : Order(grid.size(), opt.seed)) {
      const double s = grid[i];
      std::vector<double> w(static_cast<std::size_t>(shift.sft.edge_count()));
      for (int e = 0; e < shift.sft.edge_count(); ++e) {
        w[static_cast<std::size_t>(e)] = -a * roof.potential()[e] - s * shift.psi[e];
      }
      EquilibriumMeasure mu = ComputeEquilibrium(shift.sft, EdgePotential(w));
      rows[i] = {s, mu.pressure, -mu.Integrate(shift.psi), mu.entropy};
    }
    ResultTable t({"s", "pressure", "slope", "entropy"});
    for (auto& r : rows) t.AddRow(std::move(r));
    t.notes["a"] = FormatReal(a);
    t.notes["function"] = "P(-a r - s psi)";
    Describe(t, shift);
    *out = Finish(std::move(t));
  });
}

namespace {

struct CurveRows {
  std::vector<double> s;
  std::vector<double> theta;
  std::vector<double> derivative;
  std::vector<double> residual;
};

CurveRows EvaluateCurve(const ManhattanCurve& curve, double s_begin, double s_end, const mc_options& opt) {
  CurveRows rows;
  rows.s = Grid(s_begin, s_end, opt.samples);
  rows.theta.resize(rows.s.size());
  rows.derivative.resize(rows.s.size());
  rows.residual.resize(rows.s.size());
  for (std::size_t i : Order(rows.s.size(), opt.seed)) {
    rows.theta[i] = curve.Theta(rows.s[i]);
    rows.derivative[i] = curve.ThetaDerivative(rows.s[i]);
    rows.residual[i] = curve.Residual(rows.s[i]);
  }
  return rows;
}

}  // namespace

mc_status mc_manhattan(const mc_automaton* automaton, double s_begin, double s_end, const mc_options* options,
                       mc_table** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    const mc_options opt = Options(options);
    AutomatonShift shift = Shift(automaton);
    ManhattanCurve curve(shift.sft, shift.roof(), shift.psi);
    CurveRows rows = EvaluateCurve(curve, s_begin, s_end, opt);
    ResultTable t({"s", "theta", "theta_derivative", "residual"});
    for (std::size_t i = 0; i < rows.s.size(); ++i) {
      t.AddRow({rows.s[i], rows.theta[i], rows.derivative[i], rows.residual[i]});
    }
    t.notes["theta(0)"] = FormatReal(curve.Theta(0.0));
    Describe(t, shift);
    *out = Finish(std::move(t));
  });
}

mc_status mc_manhattan_svg(const mc_automaton* automaton, double s_begin, double s_end, const mc_options* options,
                           char** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    const mc_options opt = Options(options);
    AutomatonShift shift = Shift(automaton);
    ManhattanCurve curve(shift.sft, shift.roof(), shift.psi);
    CurveRows rows = EvaluateCurve(curve, s_begin, s_end, opt);
    SvgPlot plot;
    plot.title = "Manhattan curve";
    plot.x_label = "s";
    plot.y_label = "theta(s)";
    SvgSeries main{"theta", {}, false};
    for (std::size_t i = 0; i < rows.s.size(); ++i) main.points.emplace_back(rows.s[i], rows.theta[i]);
    plot.series.push_back(std::move(main));
    for (std::size_t i : {std::size_t{0}, rows.s.size() / 2, rows.s.size() - 1}) {
      SvgSeries tangent{"tangent", {}, true};
      for (double x : {s_begin, s_end}) {
        tangent.points.emplace_back(x, rows.theta[i] + rows.derivative[i] * (x - rows.s[i]));
      }
      plot.series.push_back(std::move(tangent));
    }
    *out = Duplicate(plot.Render());
  });
}

mc_status mc_rate(const mc_automaton* automaton, const double* etas, size_t eta_count, const mc_options* options,
                  mc_table** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    Require(eta_count == 0 || etas != nullptr, "null eta list");
    const mc_options opt = Options(options);
    AutomatonShift shift = Shift(automaton);
    RateFunction rate(shift.sft, shift.psi);
    std::vector<double> points(etas, etas + eta_count);
    if (points.empty()) points = Grid(rate.alpha_min().get_d(), rate.alpha_max().get_d(), opt.samples);
    std::vector<std::vector<Cell>> rows(points.size());
    for (std::size_t i : Order(points.size(), opt.seed)) {
      const double eta = points[i];
      const double value = rate.Rate(eta);
      rows[i] = {eta, value, rate.entropy() - value,
                 std::isfinite(value) ? Cell(rate.Argmax(eta)) : Cell(std::monostate{})};
    }
    ResultTable t({"eta", "rate", "growth", "argmax_t"});
    for (auto& r : rows) t.AddRow(std::move(r));
    t.notes["alpha_min"] = ToString(rate.alpha_min());
    t.notes["alpha_max"] = ToString(rate.alpha_max());
    t.notes["entropy"] = FormatReal(rate.entropy());
    t.notes["mean"] = FormatReal(rate.mean());
    Describe(t, shift);
    *out = Finish(std::move(t));
  });
}

mc_status mc_extremes(const mc_automaton* automaton, mc_table** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    const auto& a = Get(automaton);
    AutomatonShift shift = Shift(automaton);
    MeanCycleExtremes ext = ExtremalMeans(shift.sft, shift.psi);
    PrimitivityInfo prim = Primitivity(shift.sft);
    const int k = shift.sft.state_count();
    ResultTable t({"quantity", "value", "approx"});
    t.AddRow({std::string("alpha_min"), ext.alpha_min, ext.alpha_min.get_d()});
    t.AddRow({std::string("alpha_max"), ext.alpha_max, ext.alpha_max.get_d()});
    t.AddRow({std::string("min_witness"), JoinLabels(a, shift, ext.min_witness.edges), std::monostate{}});
    t.AddRow({std::string("max_witness"), JoinLabels(a, shift, ext.max_witness.edges), std::monostate{}});
    t.AddRow({std::string("l"), static_cast<long long>(ext.l), static_cast<double>(ext.l)});
    t.AddRow({std::string("k"), static_cast<long long>(k), static_cast<double>(k)});
    t.AddRow({std::string("period"), static_cast<long long>(prim.period), static_cast<double>(prim.period)});
    if (prim.primitivity_index) {
      const int m = *prim.primitivity_index;
      const Rational spread = ext.alpha_max - ext.alpha_min;
      ShrinkConstant module = ModuleShrinkConstant(m, k, spread);
      ShrinkConstant proven = ProvenShrinkConstant(m, k, spread);
      t.AddRow({std::string("M"), static_cast<long long>(m), static_cast<double>(m)});
      t.AddRow({std::string("constant_times_sqrt5"), module.numerator, module.value()});
      t.AddRow({std::string("constant_squared_times_sqrt5"), proven.numerator, proven.value()});
    }
    Describe(t, shift);
    *out = Finish(std::move(t));
  });
}

mc_status mc_lattice(const mc_automaton* automaton, mc_table** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    AutomatonShift shift = Shift(automaton);
    LatticeReport r = IsLattice(shift.sft, shift.psi, shift.psi.is_exact());
    ResultTable t({"quantity", "value"});
    t.AddRow({std::string("lattice"), r.lattice});
    t.AddRow({std::string("cohomologous_to_constant"), r.constant});
    t.AddRow({std::string("verified"), r.verified});
    if (r.verified) {
      t.AddRow({std::string("a"), r.a});
      t.AddRow({std::string("b"), r.b});
    } else {
      t.AddRow({std::string("a"), r.a_approx});
      t.AddRow({std::string("b"), r.b_approx});
    }
    if (!r.note.empty()) t.notes["note"] = r.note;
    Describe(t, shift);
    *out = Finish(std::move(t));
  });
}

mc_status mc_count(const mc_automaton* automaton, int n_begin, int n_end, const char* eta, const char* delta,
                   const mc_options* options, mc_table** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    Require(1 <= n_begin && n_begin <= n_end, "need 1 <= n_begin <= n_end");
    const mc_options opt = Options(options);
    const Rational target = ParseReal(eta, "eta");
    const Rational width = ParseReal(delta, "delta");
    Require(width >= 0, "delta must be nonnegative");
    AutomatonShift shift = Shift(automaton);
    if (!shift.psi.is_exact()) Fail(ErrorKind::kDomain, "exact counting requires rational potential");
    TracePolynomials traces(shift.sft, shift.psi, n_end, Limits(opt));
    ResultTable t({"n", "count", "total", "log_rate"});
    for (int n = n_begin; n <= n_end; ++n) {
      Integer count = traces.CountWindow(n, target, width);
      const double log_rate = count > 0 ? LogInteger(count) / n : -INFINITY;
      t.AddRow({static_cast<long long>(n), Rational(count), Rational(traces.Total(n)), log_rate});
    }
    t.notes["eta"] = ToString(target);
    t.notes["delta"] = ToString(width);
    Describe(t, shift);
    *out = Finish(std::move(t));
  });
}

mc_status mc_shrink(const mc_automaton* automaton, const char* eta, int count, const mc_options* options,
                    mc_table** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    Require(count >= 1, "count must be positive");
    const mc_options opt = Options(options);
    const EtaTarget target = ParseTarget(eta);
    AutomatonShift shift = Shift(automaton);
    ShrinkReport report = ShrinkOrbits(shift.sft, shift.psi, target, count);
    ResultTable t({"index", "period", "low_copies", "high_copies", "mean", "error_bound", "allowed", "satisfied",
                   "self_check", "interval"});
    int index = 0;
    for (const auto& c : report.certificates) {
      const Rational period_sq = Rational(c.period * c.period);
      t.AddRow({static_cast<long long>(index++), Rational(c.period), Rational(c.low_copies), Rational(c.high_copies),
                c.mean, c.error_bound, c.constant.value() / period_sq.get_d(), c.satisfied,
                c.SelfCheck(shift.sft, shift.psi), static_cast<long long>(c.interval)});
    }
    t.notes["eta"] = target.label();
    t.notes["constant_times_sqrt5"] = ToString(report.constant.numerator);
    t.notes["constant"] = FormatReal(report.constant.value());
    t.notes["power"] = std::to_string(report.power);
    t.notes["bridge_period_x"] = std::to_string(report.bridge.x.period());
    t.notes["bridge_period_y"] = std::to_string(report.bridge.y.period());
    Describe(t, shift);
    *out = Finish(std::move(t));
  });
}

mc_status mc_rational(const mc_automaton* automaton, const char* mean, const mc_options* options, mc_table** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    const mc_options opt = Options(options);
    const Rational target = ParseReal(mean, "mean");
    const auto& a = Get(automaton);
    AutomatonShift shift = Shift(automaton);
    Cycle c = RationalOrbit(shift.sft, shift.psi, target.get_num(), target.get_den(), Budget(opt));
    const Rational achieved = BirkhoffMean(c, shift.psi);
    ResultTable t({"period", "mean", "exact", "start_state", "labels"});
    t.AddRow({static_cast<long long>(c.period()), achieved, achieved == target,
              a.state_names[static_cast<std::size_t>(shift.state_origin[static_cast<std::size_t>(c.start_state)])],
              JoinLabels(a, shift, c.edges)});
    if (c.period() <= OrbitLimits{}.count_cap && shift.psi.is_exact()) {
      TracePolynomials traces(shift.sft, shift.psi, c.period(), Limits(opt));
      t.notes["exact_mean_points_at_period"] = ToString(traces.CountWindow(c.period(), target, Rational(0)));
    }
    Describe(t, shift);
    *out = Finish(std::move(t));
  });
}

mc_status mc_verify(const mc_automaton* automaton, const mc_options* options, mc_table** out) {
  bool passed = false;
  mc_status status = Guard([&] {
    Require(out != nullptr, "null output");
    const mc_options opt = Options(options);
    VerifyOptions vo;
    vo.tolerance = opt.tolerance;
    VerifyReport report = VerifyAutomaton(Get(automaton), vo);
    ResultTable t({"check", "passed", "detail"});
    for (const auto& c : report.checks) t.AddRow({c.name, c.passed, c.detail});
    passed = report.passed();
    *out = Finish(std::move(t));
  });
  if (status == MC_OK && !passed) {
    g_last_error = "one or more invariant checks failed";
    return MC_ERR_VERIFICATION;
  }
  return status;
}

mc_status mc_freegroup_automaton(const char* generators, int rank, int rho, int verify_depth,
                                 const mc_options* options, mc_automaton** out) {
  return Guard([&] {
    Require(generators && out, "null argument");
    const mc_options opt = Options(options);
    GenSet gens = GenSet::Parse(generators, rank);
    GeodesicAutomaton g = BuildGeodesicAutomaton(gens, rho, verify_depth, Metric(opt));
    g.automaton.metadata["verify_depth"] = std::to_string(verify_depth);
    g.automaton.metadata["closure_level"] = std::to_string(g.closure_level);
    *out = new mc_automaton{std::move(g.automaton), {}};
  });
}

mc_status mc_freegroup_dual(const char* base, const char* other, int rank, int memory, int verify_cycles_to,
                            const mc_options* options, mc_automaton** out) {
  return Guard([&] {
    Require(base && other && out, "null argument");
    const mc_options opt = Options(options);
    GenSet base_gens = GenSet::Parse(base, rank);
    GenSet other_gens = GenSet::Parse(other, base_gens.rank());
    GeodesicAutomaton coding = BuildGeodesicAutomaton(base_gens, -1, 8, Metric(opt));
    DualPotentialReport dual = DualPotential(coding, other_gens, memory, verify_cycles_to, Metric(opt));
    dual.automaton.metadata["cycles_checked"] = std::to_string(dual.cycles_checked);
    *out = new mc_automaton{std::move(dual.automaton), {}};
  });
}

mc_status mc_freegroup_tau(const char* base, const char* other, int rank, int T, double other_scale,
                           const mc_options* options, mc_table** out) {
  return Guard([&] {
    Require(base && other && out, "null argument");
    const mc_options opt = Options(options);
    GenSet base_gens = GenSet::Parse(base, rank);
    GenSet other_gens = GenSet::Parse(other, base_gens.rank());
    TauOptions to;
    to.budget = Metric(opt);
    to.other_scale = ExactFromDouble(other_scale);
    TauReport r = TauEmpirical(base_gens.rank(), base_gens, other_gens, T, to);
    ResultTable t({"T", "tau", "tau_approx", "classes", "max_standard_length"});
    t.AddRow({static_cast<long long>(T), r.tau, r.tau.get_d(), Rational(r.classes),
              static_cast<long long>(r.max_standard_length)});
    *out = Finish(std::move(t));
  });
}

mc_status mc_freegroup_necklaces(int rank, int max_length, const char* generators, const mc_options* options,
                                 mc_table** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    Require(rank >= 1 && max_length >= 1, "need rank >= 1 and max_length >= 1");
    const mc_options opt = Options(options);
    const GenSet gens = generators && *generators ? GenSet::Parse(generators, rank) : GenSet::Standard(rank);
    ResultTable t({"length", "word", "translation_length"});
    for (int n = 1; n <= max_length; ++n) {
      ForEachNecklace(
          rank, n,
          [&](const FreeWord& w) {
            t.AddRow({static_cast<long long>(n), w.ToString(), TranslationLength(w, gens, Metric(opt))});
          },
          Budget(opt));
    }
    t.notes["generators"] = gens.ToString();
    *out = Finish(std::move(t));
  });
}

mc_status mc_freegroup_spheres(const char* generators, int rank, int depth, const mc_options* options,
                               mc_table** out) {
  return Guard([&] {
    Require(generators && out, "null argument");
    const mc_options opt = Options(options);
    GenSet gens = GenSet::Parse(generators, rank);
    std::vector<Integer> sizes = CayleySphereSizes(gens, depth, Metric(opt));
    ResultTable t({"radius", "size"});
    for (std::size_t n = 0; n < sizes.size(); ++n) t.AddRow({static_cast<long long>(n), Rational(sizes[n])});
    *out = Finish(std::move(t));
  });
}

mc_status mc_translation_length(const char* generators, int rank, const char* word, char** out) {
  return Guard([&] {
    Require(generators && word && out, "null argument");
    GenSet gens = GenSet::Parse(generators, rank);
    *out = Duplicate(ToString(TranslationLength(FreeWord::Parse(word), gens)));
  });
}

}  // extern "C"
