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

#include <span>
#include <string>
#include <vector>

#include "ratprog/polynomial.hpp"

namespace ratprog {

class Expr;

/// Per-variable exponent caps for the numerator and denominator.
struct DegreeBounds {
  std::vector<unsigned> numerator;
  std::vector<unsigned> denominator;

  static DegreeBounds uniform(std::size_t n_vars, unsigned degree);
  std::size_t n_vars() const { return numerator.size(); }
  std::size_t unknowns() const;
  void check() const;

  friend bool operator==(const DegreeBounds&, const DegreeBounds&) = default;
};

/// Quotient of two polynomials in the same variables. Construction rejects a
/// zero denominator; canonical() scales so the leading denominator
/// coefficient is 1.
class RationalFunction {
 public:
  RationalFunction(Polynomial numerator, Polynomial denominator);

  std::size_t n_vars() const { return numerator_.n_vars(); }
  const Polynomial& numerator() const { return numerator_; }
  const Polynomial& denominator() const { return denominator_; }

  /// Throws PoleError when the denominator vanishes at `point`.
  Rational evaluate(std::span<const Rational> point) const;
  /// Floating-point evaluation; +-inf or nan at a pole.
  double evaluate(std::span<const double> point) const;

  RationalFunction canonical() const;
  RationalFunction scaled(const Rational& c) const;

  /// Expression tree over the given variable names.
  Expr to_expr(std::span<const std::string> var_names) const;

  /// `(<num>)/(<den>)`.
  std::string to_string(std::span<const std::string> var_names) const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  Polynomial numerator_;
  Polynomial denominator_;
};

/// Default variable names x1..xn.
std::vector<std::string> default_var_names(std::size_t n_vars);

}  // namespace ratprog
