// Copyright 2026 The ratprog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ratprog/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "ratprog/errors.hpp"

namespace ratprog {

namespace mp = boost::multiprecision;

Integer floor_integer(const Rational& q) {
  const Integer& num = mp::numerator(q);
  const Integer& den = mp::denominator(q);
  Integer result;
  mpz_fdiv_q(result.backend().data(), num.backend().data(), den.backend().data());
  return result;
}

Integer ceil_integer(const Rational& q) {
  const Integer& num = mp::numerator(q);
  const Integer& den = mp::denominator(q);
  Integer result;
  mpz_cdiv_q(result.backend().data(), num.backend().data(), den.backend().data());
  return result;
}

bool is_integer(const Rational& q) { return mp::denominator(q) == 1; }

Rational euclidean_quotient(const Rational& a, const Rational& b) {
  if (b == 0) throw DomainError("euclidean division by zero");
  Rational q = floor(a / abs(b));
  return b > 0 ? q : Rational(-q);
}

Rational euclidean_remainder(const Rational& a, const Rational& b) {
  return a - b * euclidean_quotient(a, b);
}

Rational power(const Rational& base, unsigned exponent) {
  return Rational(mp::pow(mp::numerator(base), exponent), mp::pow(mp::denominator(base), exponent));
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw DomainError("empty interval [" + to_string(lo) + ", " + to_string(hi) + "]");
  if (lo <= 0 && hi >= 0) return 0;
  if (hi < 0) return -simplest_between(-hi, -lo);
  // Continued-fraction descent on 0 < lo <= hi.
  Rational a = lo, b = hi;
  std::vector<Integer> digits;
  while (true) {
    Integer c = ceil_integer(a);
    if (Rational(c) <= b) {
      digits.push_back(c);
      break;
    }
    Integer f = floor_integer(a);
    digits.push_back(f);
    Rational na = 1 / (b - Rational(f));
    b = 1 / (a - Rational(f));
    a = na;
  }
  Rational r = Rational(digits.back());
  for (auto it = digits.rbegin() + 1; it != digits.rend(); ++it) r = Rational(*it) + 1 / r;
  return r;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value cannot be made exact");
  Rational q;
  mpq_set_d(q.backend().data(), x);
  return q;
}

double to_double(const Rational& q) { return mpq_get_d(q.backend().data()); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return ParseError("not a number: '" + s + "'"); };
  if (s.empty()) throw bad();
  if (s.find_first_of(".eE") == std::string::npos) {
    // Integer or p/q.
    for (char c : s) {
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
        throw bad();
    }
    try {
      Rational q(s);
      return q;
    } catch (const std::exception&) {
      throw bad();
    }
  }
  // Decimal with optional exponent, converted exactly from its digits.
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_dot = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_dot) --scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw bad();
    ++pos;
    std::string exponent = s.substr(pos);
    if (exponent.empty()) throw bad();
    char* end = nullptr;
    long e = std::strtol(exponent.c_str(), &end, 10);
    if (*end != '\0' || std::labs(e) > 100000) throw bad();
    scale += e;
  }
  Rational q{Integer(digits)};
  Integer ten_pow = mp::pow(Integer(10), static_cast<unsigned>(std::labs(scale)));
  q = scale >= 0 ? q * Rational(ten_pow) : q / Rational(ten_pow);
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_decimal(const Rational& q, int digits) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << to_double(q);
  return out.str();
}

}  // namespace ratprog
