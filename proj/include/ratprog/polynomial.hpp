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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ratprog/rational.hpp"

namespace ratprog {

using Exponents = std::vector<unsigned>;

/// Graded lexicographic comparison: total degree first, then lexicographic.
bool grlex_less(const Exponents& a, const Exponents& b);

/// Every exponent vector e with 0 <= e_k <= bounds[k], ascending in grlex.
std::vector<Exponents> monomial_basis(std::span<const unsigned> bounds);

struct Term {
  Rational coeff;
  Exponents exponents;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial over the rationals. Terms are kept in
/// descending grlex order (leading term first), with no zero coefficients
/// and no repeated exponent vectors.
class Polynomial {
 public:
  explicit Polynomial(std::size_t n_vars);
  Polynomial(std::size_t n_vars, std::vector<Term> terms);

  static Polynomial constant(std::size_t n_vars, const Rational& c);

  std::size_t n_vars() const { return n_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;

  /// Coefficient of the grlex-greatest term; zero for the zero polynomial.
  Rational leading_coefficient() const;

  /// `c*x1^e1*...*xn^en` terms joined with + and -.
  std::string to_string(std::span<const std::string> var_names) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::size_t n_vars_;
  std::vector<Term> terms_;
};

}  // namespace ratprog
