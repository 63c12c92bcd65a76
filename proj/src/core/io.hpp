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


#ifndef MCURVE_CORE_IO_HPP_
#define MCURVE_CORE_IO_HPP_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "automaton.hpp"
#include "rational.hpp"

namespace mcurve {

inline constexpr int kAutomatonSchemaVersion = 1;

struct LoadedAutomaton {
  DualMetricAutomaton automaton;
  // Non-fatal findings, such as states removed by pruning.
  std::vector<std::string> warnings;
};

// Parses and validates an automaton document. Errors name the offending
// field; JSON syntax errors carry line and column.
LoadedAutomaton ParseAutomaton(std::string_view text, bool prune = true);
LoadedAutomaton LoadAutomaton(const std::string& path, bool prune = true);

// Canonical form: fixed key order, exact rationals, two-space indent.
std::string SerializeAutomaton(const DualMetricAutomaton& automaton);
void SaveAutomaton(const DualMetricAutomaton& automaton, const std::string& path);

// A typed cell of a result table. Rationals stay exact in JSON.
using Cell = std::variant<std::monostate, bool, long long, Rational, double, std::string>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::map<std::string, std::string> notes;

  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> cols) : columns(std::move(cols)) {}
  void AddRow(std::vector<Cell> row);
};

std::string TableToJson(const ResultTable& table);
// Lossy: every number becomes a 12-significant-digit decimal.
std::string TableToCsv(const ResultTable& table);

// Decimal rendering at 12 significant digits; "inf", "-inf", "nan" for
// non-finite values.
std::string FormatReal(double x);

// A static line plot.
struct SvgSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<SvgSeries> series;
  int width = 640;
  int height = 480;

  std::string Render() const;
};

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace mcurve

#endif  // MCURVE_CORE_IO_HPP_
