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

#include "rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "error.hpp"

namespace mcurve {
namespace {

bool IsIntegerLiteral(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer ParseInteger(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return Integer(t, 10);
}

Integer Pow10(long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

std::optional<Rational> TryParseRational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!IsIntegerLiteral(num) || !IsIntegerLiteral(den)) return std::nullopt;
    Integer d = ParseInteger(den);
    if (d == 0) return std::nullopt;
    Rational q(ParseInteger(num), d);
    q.canonicalize();
    return q;
  }
  if (IsIntegerLiteral(text)) return Rational(ParseInteger(text));

  // Decimal with optional exponent.
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_part = text.substr(e + 1);
    if (!IsIntegerLiteral(exp_part)) return std::nullopt;
    try {
      exponent = std::stol(std::string(exp_part));
    } catch (...) {
      return std::nullopt;
    }
    mantissa = text.substr(0, e);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  auto dot = mantissa.find('.');
  std::string digits;
  long frac_len = 0;
  if (dot == std::string_view::npos) {
    digits = std::string(mantissa);
  } else {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    frac_len = static_cast<long>(mantissa.size() - dot - 1);
  }
  if (digits.empty()) return std::nullopt;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  }
  if (std::labs(exponent) > 4096) return std::nullopt;
  Integer num(digits, 10);
  if (negative) num = -num;
  long shift = exponent - frac_len;
  Rational q = shift >= 0 ? Rational(num * Pow10(shift)) : Rational(num, Pow10(-shift));
  q.canonicalize();
  return q;
}

Rational ParseRational(std::string_view text) {
  auto q = TryParseRational(text);
  if (!q) Fail(ErrorKind::kParse, "not a rational number: '" + std::string(text) + "'");
  return *q;
}

std::string ToString(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational ExactFromDouble(double x) {
  if (!std::isfinite(x)) Fail(ErrorKind::kDomain, "non-finite value has no rational form");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

Integer Floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer Ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace mcurve
