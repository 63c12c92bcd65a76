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


#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "error.hpp"
#include "json.hpp"

namespace mcurve {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void SchemaError(const std::string& field, const std::string& message) {
  Fail(ErrorKind::kParse, field + ": " + message);
}

void RejectUnknownKeys(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (!allowed.count(it.key())) SchemaError(where, "unknown field '" + it.key() + "'");
  }
}

// Floats are read through their shortest round-trip decimal, so 0.1 in a
// file means 1/10.
Rational JsonToRational(const json& v, const std::string& field) {
  if (v.is_number_unsigned()) return Rational(Integer(std::to_string(v.get<std::uint64_t>())));
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<std::int64_t>())));
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) SchemaError(field, "value is not finite");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    return ParseRational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }
  if (v.is_string()) {
    auto q = TryParseRational(v.get<std::string>());
    if (!q) SchemaError(field, "'" + v.get<std::string>() + "' is not a rational number");
    return *q;
  }
  SchemaError(field, "expected a number or a rational string such as \"3/2\"");
}

ordered_json RationalToJson(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return ordered_json(static_cast<std::int64_t>(q.get_num().get_si()));
  return ordered_json(ToString(q));
}

int StateRef(const json& v, const std::map<std::string, int>& by_name, int count, const std::string& field) {
  if (v.is_string()) {
    auto it = by_name.find(v.get<std::string>());
    if (it == by_name.end()) SchemaError(field, "unknown state '" + v.get<std::string>() + "'");
    return it->second;
  }
  if (v.is_number_integer()) {
    const auto i = v.get<std::int64_t>();
    if (i < 0 || i >= count) SchemaError(field, "state index " + std::to_string(i) + " out of range");
    return static_cast<int>(i);
  }
  SchemaError(field, "expected a state name or index");
}

std::string Escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kInvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
  out << contents;
  if (!out) Fail(ErrorKind::kInvalidArgument, "write to '" + path + "' failed");
}

LoadedAutomaton ParseAutomaton(std::string_view text, bool prune) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorKind::kParse, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) SchemaError("document", "expected an object");
  RejectUnknownKeys(root, {"schema_version", "states", "edges", "metadata"}, "document");
  if (!root.contains("schema_version")) SchemaError("schema_version", "missing");
  if (!root["schema_version"].is_number_integer() || root["schema_version"].get<int>() != kAutomatonSchemaVersion) {
    SchemaError("schema_version", "unsupported version " + root["schema_version"].dump() + " (expected " +
                                      std::to_string(kAutomatonSchemaVersion) + ")");
  }

  LoadedAutomaton out;
  DualMetricAutomaton& a = out.automaton;
  if (!root.contains("states") || !root["states"].is_array()) SchemaError("states", "missing or not an array");
  std::map<std::string, int> by_name;
  const json& states = root["states"];
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string where = "states[" + std::to_string(i) + "]";
    const json& s = states[i];
    if (!s.is_object()) SchemaError(where, "expected an object");
    RejectUnknownKeys(s, {"name", "initial"}, where);
    if (!s.contains("name") || !s["name"].is_string() || s["name"].get<std::string>().empty()) {
      SchemaError(where + ".name", "missing or not a non-empty string");
    }
    bool initial = false;
    if (s.contains("initial")) {
      if (!s["initial"].is_boolean()) SchemaError(where + ".initial", "expected true or false");
      initial = s["initial"].get<bool>();
    }
    const std::string name = s["name"].get<std::string>();
    if (by_name.count(name)) SchemaError(where + ".name", "duplicate state name '" + name + "'");
    by_name[name] = a.AddState(name, initial);
  }
  if (a.state_count() == 0) SchemaError("states", "at least one state is required");
  if (std::none_of(a.initial.begin(), a.initial.end(), [](bool b) { return b; })) {
    SchemaError("states", "at least one state must be initial");
  }

  if (!root.contains("edges") || !root["edges"].is_array()) SchemaError("edges", "missing or not an array");
  const json& edges = root["edges"];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_object()) SchemaError(where, "expected an object");
    RejectUnknownKeys(e, {"from", "to", "label", "r", "psi"}, where);
    if (!e.contains("from")) SchemaError(where + ".from", "missing");
    if (!e.contains("to")) SchemaError(where + ".to", "missing");
    AutomatonEdge edge;
    edge.from = StateRef(e["from"], by_name, a.state_count(), where + ".from");
    edge.to = StateRef(e["to"], by_name, a.state_count(), where + ".to");
    if (e.contains("label")) {
      if (!e["label"].is_string()) SchemaError(where + ".label", "expected a string");
      edge.label = e["label"].get<std::string>();
    }
    if (e.contains("r")) edge.r = JsonToRational(e["r"], where + ".r");
    if (e.contains("psi")) edge.psi = JsonToRational(e["psi"], where + ".psi");
    if (edge.r <= 0) {
      SchemaError(where + ".r", "edge " + a.state_names[static_cast<std::size_t>(edge.from)] + " -" + edge.label +
                                    "-> " + a.state_names[static_cast<std::size_t>(edge.to)] +
                                    " has non-positive r = " + ToString(edge.r));
    }
    a.edges.push_back(std::move(edge));
  }

  if (root.contains("metadata")) {
    const json& m = root["metadata"];
    if (!m.is_object()) SchemaError("metadata", "expected an object");
    for (auto it = m.begin(); it != m.end(); ++it) {
      if (!it.value().is_string()) SchemaError("metadata." + it.key(), "expected a string");
      a.metadata[it.key()] = it.value().get<std::string>();
    }
  }

  a.Validate();
  if (prune) {
    std::vector<std::string> removed = Prune(a);
    if (!removed.empty()) {
      std::string list;
      for (const auto& n : removed) list += (list.empty() ? "" : ", ") + n;
      out.warnings.push_back("pruned " + std::to_string(removed.size()) + " unreachable state(s): " + list);
    }
  }
  return out;
}

LoadedAutomaton LoadAutomaton(const std::string& path, bool prune) {
  const std::string text = ReadFile(path);
  try {
    return ParseAutomaton(text, prune);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string SerializeAutomaton(const DualMetricAutomaton& a) {
  a.Validate();
  ordered_json root;
  root["schema_version"] = kAutomatonSchemaVersion;
  ordered_json states = ordered_json::array();
  for (int s = 0; s < a.state_count(); ++s) {
    ordered_json st;
    st["name"] = a.state_names[static_cast<std::size_t>(s)];
    st["initial"] = static_cast<bool>(a.initial[static_cast<std::size_t>(s)]);
    states.push_back(std::move(st));
  }
  root["states"] = std::move(states);
  ordered_json edges = ordered_json::array();
  for (const auto& e : a.edges) {
    ordered_json ed;
    ed["from"] = a.state_names[static_cast<std::size_t>(e.from)];
    ed["to"] = a.state_names[static_cast<std::size_t>(e.to)];
    ed["label"] = e.label;
    ed["r"] = RationalToJson(e.r);
    ed["psi"] = RationalToJson(e.psi);
    edges.push_back(std::move(ed));
  }
  root["edges"] = std::move(edges);
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : a.metadata) meta[k] = v;
  root["metadata"] = std::move(meta);
  return root.dump(2) + "\n";
}

void SaveAutomaton(const DualMetricAutomaton& automaton, const std::string& path) {
  WriteFile(path, SerializeAutomaton(automaton));
}

void ResultTable::AddRow(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    Fail(ErrorKind::kInvalidArgument, "row has " + std::to_string(row.size()) + " cells, table has " +
                                          std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::string FormatReal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string TableToJson(const ResultTable& table) {
  ordered_json root;
  root["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      ordered_json v;
      if (std::holds_alternative<bool>(c)) {
        v = std::get<bool>(c);
      } else if (std::holds_alternative<long long>(c)) {
        v = std::get<long long>(c);
      } else if (std::holds_alternative<Rational>(c)) {
        const Rational& q = std::get<Rational>(c);
        v["num"] = q.get_num().get_str();
        v["den"] = q.get_den().get_str();
      } else if (std::holds_alternative<double>(c)) {
        const double d = std::get<double>(c);
        if (std::isfinite(d)) {
          v = std::stod(FormatReal(d));
        } else {
          v = FormatReal(d);
        }
      } else if (std::holds_alternative<std::string>(c)) {
        v = std::get<std::string>(c);
      }
      r[table.columns[i]] = std::move(v);
    }
    rows.push_back(std::move(r));
  }
  root["rows"] = std::move(rows);
  if (!table.notes.empty()) {
    ordered_json notes = ordered_json::object();
    for (const auto& [k, v] : table.notes) notes[k] = v;
    root["notes"] = std::move(notes);
  }
  return root.dump(2) + "\n";
}

std::string TableToCsv(const ResultTable& table) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::string out = "# lossy export: exact values rounded to 12 significant digits; use --format json for exact output\n";
  for (const auto& [k, v] : table.notes) out += "# " + k + ": " + v + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + quote(table.columns[i]);
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      const Cell& c = row[i];
      if (std::holds_alternative<bool>(c)) {
        out += std::get<bool>(c) ? "true" : "false";
      } else if (std::holds_alternative<long long>(c)) {
        out += std::to_string(std::get<long long>(c));
      } else if (std::holds_alternative<Rational>(c)) {
        const Rational& q = std::get<Rational>(c);
        out += q.get_den() == 1 ? q.get_num().get_str() : FormatReal(q.get_d());
      } else if (std::holds_alternative<double>(c)) {
        out += FormatReal(std::get<double>(c));
      } else if (std::holds_alternative<std::string>(c)) {
        out += quote(std::get<std::string>(c));
      }
    }
    out += "\n";
  }
  return out;
}

namespace {

// Round step from {1, 2, 5} x 10^k giving about `target` ticks.
double NiceStep(double span, int target) {
  if (!(span > 0)) return 1.0;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string SvgPlot::Render() const {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1;
  if (!(y0 <= y1)) y0 = 0, y1 = 1;
  if (x1 - x0 <= 0) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 <= 0) y0 -= 0.5, y1 += 0.5;
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << Escape(title)
      << "</text>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xs = NiceStep(x1 - x0, 6), ys = NiceStep(y1 - y0, 6);
  for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
    svg << "<line x1=\"" << px(t) << "\" y1=\"" << top + ph << "\" x2=\"" << px(t) << "\" y2=\"" << top + ph + 5
        << "\" stroke=\"black\"/><text x=\"" << px(t) << "\" y=\"" << top + ph + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << FormatReal(std::abs(t) < 1e-12 * xs ? 0.0 : t)
        << "</text>\n";
  }
  for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << left << "\" y2=\"" << py(t)
        << "\" stroke=\"black\"/><text x=\"" << left - 8 << "\" y=\"" << py(t) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << FormatReal(std::abs(t) < 1e-12 * ys ? 0.0 : t)
        << "</text>\n";
  }
  svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\" font-size=\"13\">"
      << Escape(x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << top + ph / 2 << ")\">" << Escape(y_label) << "</text>\n";

  svg << "<clipPath id=\"plot\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\""
      << ph << "\"/></clipPath>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % std::size(kColors)];
    svg << "<polyline clip-path=\"url(#plot)\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
        << (s.dashed ? 1 : 2) << "\"" << (s.dashed ? " stroke-dasharray=\"4 3\"" : "") << " points=\"";
    bool first = true;
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      svg << (first ? "" : " ") << px(x) << "," << py(y);
      first = false;
    }
    svg << "\"/>\n";
    if (!s.name.empty() && !s.dashed) {
      svg << "<text x=\"" << left + pw - 8 << "\" y=\"" << top + 16 + 14 * static_cast<double>(i)
          << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">" << Escape(s.name) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mcurve
