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

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace ratprog {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

Integer floor_integer(const Rational& q);
Integer ceil_integer(const Rational& q);

inline Rational floor(const Rational& q) { return Rational(floor_integer(q)); }
inline Rational ceil(const Rational& q) { return Rational(ceil_integer(q)); }

bool is_integer(const Rational& q);

Rational power(const Rational& base, unsigned exponent);

/// Euclidean division: a = b*q + r with 0 <= r < |b|. Requires b != 0.
Rational euclidean_quotient(const Rational& a, const Rational& b);
Rational euclidean_remainder(const Rational& a, const Rational& b);

/// Exact conversion; every finite double is a dyadic rational.
Rational from_double(double x);

/// The rational with the smallest denominator in [lo, hi]. Requires lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);
double to_double(const Rational& q);

/// Accepts "p", "-p", "p/q" and decimal forms like "1.25" or "-3e-2".
Rational parse_rational(std::string_view text);

/// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

/// Fixed-point rendering for human-facing output.
std::string to_decimal(const Rational& q, int digits = 6);

}  // namespace ratprog
