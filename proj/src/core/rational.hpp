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

#ifndef MCURVE_CORE_RATIONAL_HPP_
#define MCURVE_CORE_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mcurve {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "7", "-3/4", "1.25" and "2.5e-3"; decimals are converted exactly.
Rational ParseRational(std::string_view text);
std::optional<Rational> TryParseRational(std::string_view text);

std::string ToString(const Rational& q);
inline std::string ToString(const Integer& z) { return z.get_str(); }

inline double ToDouble(const Rational& q) { return q.get_d(); }

// Exact binary value of a finite double.
Rational ExactFromDouble(double x);

inline Rational Abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Integer Gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer Lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline std::int64_t GcdInt(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// lhs <= rhs / sqrt(5), decided exactly for lhs >= 0 and rhs >= 0.
inline bool LeqOverSqrt5(const Rational& lhs, const Rational& rhs) {
  return 5 * lhs * lhs <= rhs * rhs;
}

// Floor and ceiling of a rational as integers.
Integer Floor(const Rational& q);
Integer Ceil(const Rational& q);

}  // namespace mcurve

#endif  // MCURVE_CORE_RATIONAL_HPP_
