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


// Command-line front end. Talks to the library only through its C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcurve/mcurve.h"

namespace {

struct Global {
  double tolerance = 1e-6;
  int samples = 25;
  long long budget = 0;
  unsigned long long seed = 0;
  std::string format = "csv";
  bool exact = false;
  std::string output;
};

struct AutomatonDeleter {
  void operator()(mc_automaton* a) const { mc_automaton_free(a); }
};
struct TableDeleter {
  void operator()(mc_table* t) const { mc_table_free(t); }
};
using AutomatonPtr = std::unique_ptr<mc_automaton, AutomatonDeleter>;
using TablePtr = std::unique_ptr<mc_table, TableDeleter>;

class Failure {
 public:
  explicit Failure(mc_status status) : status_(status) {}
  mc_status status() const { return status_; }

 private:
  mc_status status_;
};

void Check(mc_status status) {
  if (status != MC_OK) throw Failure(status);
}

mc_options MakeOptions(const Global& g) {
  mc_options o;
  mc_options_init(&o);
  o.tolerance = g.tolerance;
  o.samples = g.samples;
  o.budget = g.budget;
  o.seed = g.seed;
  return o;
}

void Emit(const Global& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) {
    std::cerr << "mcurve: error: cannot write '" << g.output << "'\n";
    throw Failure(MC_ERR_INVALID_ARGUMENT);
  }
  out << text;
}

std::string TakeString(char* s) {
  std::string out = s ? s : "";
  mc_string_free(s);
  return out;
}

std::string CsvField(const char* text) {
  std::string s = text ? text : "";
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// CSV from the exact cell text: rationals stay p/q.
std::string ExactCsv(const mc_table* table) {
  std::string out = "# exact export: rationals as p/q, reals at 12 significant digits\n";
  for (size_t c = 0; c < mc_table_columns(table); ++c) {
    out += (c ? "," : "") + CsvField(mc_table_column_name(table, c));
  }
  out += "\n";
  for (size_t r = 0; r < mc_table_rows(table); ++r) {
    for (size_t c = 0; c < mc_table_columns(table); ++c) {
      out += (c ? "," : "") + CsvField(mc_table_cell_text(table, r, c));
    }
    out += "\n";
  }
  return out;
}

void EmitTable(const Global& g, mc_table* raw) {
  TablePtr table(raw);
  char* text = nullptr;
  if (g.format == "json") {
    Check(mc_table_to_json(table.get(), &text));
  } else if (g.format == "csv" && g.exact) {
    Emit(g, ExactCsv(table.get()));
    return;
  } else if (g.format == "csv") {
    Check(mc_table_to_csv(table.get(), &text));
  } else {
    std::cerr << "mcurve: error: --format " << g.format << " is only available for manhattan\n";
    throw Failure(MC_ERR_USAGE);
  }
  Emit(g, TakeString(text));
}

AutomatonPtr Load(const std::string& path) {
  mc_automaton* a = nullptr;
  Check(mc_automaton_load(path.c_str(), &a));
  AutomatonPtr out(a);
  for (size_t i = 0; i < mc_automaton_warning_count(a); ++i) {
    std::cerr << "mcurve: warning: " << mc_automaton_warning(a, i) << "\n";
  }
  return out;
}

void EmitAutomaton(const Global& g, mc_automaton* raw) {
  AutomatonPtr a(raw);
  char* text = nullptr;
  Check(mc_automaton_to_json(a.get(), &text));
  Emit(g, TakeString(text));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Manhattan curves, pressure and periodic orbit statistics for dual-metric automata"};
  app.fallthrough();
  app.require_subcommand(1);
  Global g;
  app.add_option("--tolerance", g.tolerance, "Tolerance for floating-point checks")->check(CLI::PositiveNumber);
  app.add_option("--samples", g.samples, "Number of samples on curves and grids")->check(CLI::Range(1, 1000000));
  app.add_option("--budget", g.budget, "State budget (overrides MCURVE_BUDGET)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Evaluation-order seed; never changes values");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_flag("--exact", g.exact, "Keep rationals exact (p/q) in CSV output");
  app.add_option("-o,--output", g.output, "Write to a file instead of stdout");

  std::string file;
  auto add_file = [&](CLI::App* sub) { sub->add_option("automaton", file, "Automaton JSON file")->required(); };

  auto* components = app.add_subcommand("components", "Strongly connected components and spectral radii");
  add_file(components);

  double a_coef = 0.0, s_begin = 0.0;
  std::optional<double> s_end;
  auto* pressure = app.add_subcommand("pressure", "Pressure P(-a r - s psi) on a grid of s");
  add_file(pressure);
  pressure->add_option("--a", a_coef, "Coefficient of the roof");
  pressure->add_option("--s-begin", s_begin, "First s");
  pressure->add_option("--s-end", s_end, "Last s (default 1)");

  auto* manhattan = app.add_subcommand("manhattan", "Sample the Manhattan curve theta(s)");
  add_file(manhattan);
  manhattan->add_option("--s-begin", s_begin, "First s");
  manhattan->add_option("--s-end", s_end, "Last s (default theta(0))");

  std::vector<double> eta_at;
  auto* rate = app.add_subcommand("rate", "Large-deviation rate function");
  add_file(rate);
  rate->add_option("--eta-at", eta_at, "Evaluate at these targets (default: a grid over the domain)");

  auto* extremes = app.add_subcommand("extremes", "Extremal cycle means, witnesses and the shrinking constant");
  add_file(extremes);

  auto* lattice = app.add_subcommand("lattice", "Decide whether the potential is lattice");
  add_file(lattice);

  int n = 0, n_begin = 0, n_end = 0;
  std::string eta, delta = "0";
  auto* count = app.add_subcommand("count", "Exact counts of periodic points with mean in a window");
  add_file(count);
  count->add_option("--n", n, "Single period");
  count->add_option("--n-begin", n_begin, "First period");
  count->add_option("--n-end", n_end, "Last period");
  count->add_option("--eta", eta, "Window centre")->required();
  count->add_option("--delta", delta, "Window half-width; 0 counts exact means");

  int cert_count = 5;
  auto* shrink = app.add_subcommand("shrink", "Closed orbits with means in shrinking windows");
  add_file(shrink);
  shrink->add_option("--eta", eta, "Target: rational, decimal, 'golden' or 'surd:p,q,d'")->required();
  shrink->add_option("--count", cert_count, "Number of certificates")->check(CLI::PositiveNumber);

  std::string mean;
  auto* rational = app.add_subcommand("rational", "A closed orbit with an exact rational mean");
  add_file(rational);
  rational->add_option("--mean", mean, "Target mean p/q")->required();

  auto* verify = app.add_subcommand("verify", "Run the full invariant suite on an automaton");
  add_file(verify);

  auto* freegroup = app.add_subcommand("freegroup", "Free-group codings and metrics");
  freegroup->require_subcommand(1);
  std::string gens = "a,b", base = "a,b", other = "a,b";
  int rank = 0, rho = -1, verify_depth = 8, memory = 1, verify_cycles = 8, tau_t = 14, max_length = 6, depth = 8;
  double scale = 1.0;
  auto* fg_automaton = freegroup->add_subcommand("automaton", "Verified shortlex geodesic automaton");
  fg_automaton->add_option("--gens", gens, "Generating set, e.g. a,b,ab");
  fg_automaton->add_option("--rank", rank, "Rank (default: inferred)");
  fg_automaton->add_option("--rho", rho, "Cone radius (default: twice the longest generator)");
  fg_automaton->add_option("--verify-depth", verify_depth, "Sphere depth checked against the Cayley graph");
  auto* fg_dual = freegroup->add_subcommand("dual", "Dual potential of a second generating set");
  fg_dual->add_option("--base", base, "Coding generating set");
  fg_dual->add_option("--other", other, "Generating set of the potential");
  fg_dual->add_option("--rank", rank, "Rank (default: inferred)");
  fg_dual->add_option("--memory", memory, "Generators remembered per state");
  fg_dual->add_option("--verify-cycles-to", verify_cycles, "Cycle length checked against translation lengths");
  auto* fg_tau = freegroup->add_subcommand("tau", "Average length ratio over conjugacy classes");
  fg_tau->add_option("--base", base, "Generating set bounding the classes");
  fg_tau->add_option("--other", other, "Generating set being averaged");
  fg_tau->add_option("--rank", rank, "Rank (default: inferred)");
  fg_tau->add_option("--T", tau_t, "Classes with base translation length below T");
  fg_tau->add_option("--scale", scale, "Multiplier on the other lengths");
  auto* fg_necklaces = freegroup->add_subcommand("necklaces", "Conjugacy classes as rotation-minimal words");
  fg_necklaces->add_option("--rank", rank, "Rank")->required();
  fg_necklaces->add_option("--max-length", max_length, "Longest standard length");
  fg_necklaces->add_option("--gens", gens, "Generating set for translation lengths");
  auto* fg_spheres = freegroup->add_subcommand("spheres", "Sphere sizes of the Cayley graph");
  fg_spheres->add_option("--gens", gens, "Generating set");
  fg_spheres->add_option("--rank", rank, "Rank (default: inferred)");
  fg_spheres->add_option("--depth", depth, "Largest radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const mc_options opt = MakeOptions(g);
  try {
    if (g.format == "svg" && !manhattan->parsed()) {
      std::cerr << "mcurve: error: --format svg is only available for manhattan\n";
      return 2;
    }
    mc_table* table = nullptr;
    if (components->parsed()) {
      AutomatonPtr a = Load(file);
      Check(mc_components(a.get(), &table));
      EmitTable(g, table);
    } else if (pressure->parsed()) {
      AutomatonPtr a = Load(file);
      Check(mc_pressure(a.get(), a_coef, s_begin, s_end.value_or(1.0), &opt, &table));
      EmitTable(g, table);
    } else if (manhattan->parsed()) {
      AutomatonPtr a = Load(file);
      if (!s_end) {
        mc_options one = opt;
        one.samples = 1;
        Check(mc_manhattan(a.get(), 0.0, 0.0, &one, &table));
        TablePtr probe(table);
        double theta0 = 0.0;
        Check(mc_table_cell_double(probe.get(), 0, 1, &theta0));
        s_end = theta0;
      }
      if (g.format == "svg") {
        char* svg = nullptr;
        Check(mc_manhattan_svg(a.get(), s_begin, *s_end, &opt, &svg));
        Emit(g, TakeString(svg));
      } else {
        Check(mc_manhattan(a.get(), s_begin, *s_end, &opt, &table));
        EmitTable(g, table);
      }
    } else if (rate->parsed()) {
      AutomatonPtr a = Load(file);
      Check(mc_rate(a.get(), eta_at.data(), eta_at.size(), &opt, &table));
      EmitTable(g, table);
    } else if (extremes->parsed()) {
      AutomatonPtr a = Load(file);
      Check(mc_extremes(a.get(), &table));
      EmitTable(g, table);
    } else if (lattice->parsed()) {
      AutomatonPtr a = Load(file);
      Check(mc_lattice(a.get(), &table));
      EmitTable(g, table);
    } else if (count->parsed()) {
      if (n > 0) n_begin = n_end = n;
      if (n_begin <= 0 || n_end < n_begin) {
        std::cerr << "mcurve: error: give --n or --n-begin/--n-end with 1 <= begin <= end\n";
        return 2;
      }
      AutomatonPtr a = Load(file);
      Check(mc_count(a.get(), n_begin, n_end, eta.c_str(), delta.c_str(), &opt, &table));
      EmitTable(g, table);
    } else if (shrink->parsed()) {
      AutomatonPtr a = Load(file);
      Check(mc_shrink(a.get(), eta.c_str(), cert_count, &opt, &table));
      EmitTable(g, table);
    } else if (rational->parsed()) {
      AutomatonPtr a = Load(file);
      Check(mc_rational(a.get(), mean.c_str(), &opt, &table));
      EmitTable(g, table);
    } else if (verify->parsed()) {
      AutomatonPtr a = Load(file);
      const mc_status status = mc_verify(a.get(), &opt, &table);
      if (table) EmitTable(g, table);
      Check(status);
    } else if (fg_automaton->parsed()) {
      mc_automaton* a = nullptr;
      Check(mc_freegroup_automaton(gens.c_str(), rank, rho, verify_depth, &opt, &a));
      EmitAutomaton(g, a);
    } else if (fg_dual->parsed()) {
      mc_automaton* a = nullptr;
      Check(mc_freegroup_dual(base.c_str(), other.c_str(), rank, memory, verify_cycles, &opt, &a));
      EmitAutomaton(g, a);
    } else if (fg_tau->parsed()) {
      Check(mc_freegroup_tau(base.c_str(), other.c_str(), rank, tau_t, scale, &opt, &table));
      EmitTable(g, table);
    } else if (fg_necklaces->parsed()) {
      Check(mc_freegroup_necklaces(rank, max_length, gens.c_str(), &opt, &table));
      EmitTable(g, table);
    } else if (fg_spheres->parsed()) {
      Check(mc_freegroup_spheres(gens.c_str(), rank, depth, &opt, &table));
      EmitTable(g, table);
    }
  } catch (const Failure& f) {
    const char* message = mc_last_error();
    if (message && *message) std::cerr << "mcurve: error: " << message << "\n";
    return mc_exit_code(f.status());
  }
  return 0;
}
