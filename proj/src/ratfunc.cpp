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

#include "ratprog/ratfunc.hpp"

#include <numeric>

#include "ratprog/errors.hpp"
#include "ratprog/expr.hpp"

namespace ratprog {

DegreeBounds DegreeBounds::uniform(std::size_t n_vars, unsigned degree) {
  return DegreeBounds{std::vector<unsigned>(n_vars, degree), std::vector<unsigned>(n_vars, degree)};
}

std::size_t DegreeBounds::unknowns() const {
  auto count = [](const std::vector<unsigned>& b) {
    std::size_t n = 1;
    for (unsigned u : b) n *= u + 1;
    return n;
  };
  return count(numerator) + count(denominator);
}

void DegreeBounds::check() const {
  if (numerator.empty()) throw DimensionError("degree bounds must cover at least one variable");
  if (numerator.size() != denominator.size())
    throw DimensionError("numerator and denominator bounds differ in length");
}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (numerator_.n_vars() != denominator_.n_vars())
    throw DimensionError("numerator and denominator are in different variables");
  if (denominator_.is_zero()) throw DomainError("rational function with zero denominator");
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  Rational den = denominator_.evaluate(point);
  if (den == 0) {
    std::string where;
    for (std::size_t k = 0; k < point.size(); ++k) {
      if (k) where += ", ";
      where += ratprog::to_string(point[k]);
    }
    throw PoleError("denominator vanishes at (" + where + ")");
  }
  return numerator_.evaluate(point) / den;
}

double RationalFunction::evaluate(std::span<const double> point) const {
  return numerator_.evaluate(point) / denominator_.evaluate(point);
}

RationalFunction RationalFunction::canonical() const {
  Rational lead = denominator_.leading_coefficient();
  Rational factor = 1 / lead;
  return RationalFunction(numerator_.scaled(factor), denominator_.scaled(factor));
}

RationalFunction RationalFunction::scaled(const Rational& c) const {
  if (c == 0) throw DomainError("scaling a rational function by zero");
  return RationalFunction(numerator_.scaled(c), denominator_.scaled(c));
}

namespace {

Expr polynomial_expr(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return Expr::constant(0);
  Expr sum;
  for (const Term& t : p.terms()) {
    Expr monomial;
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (t.exponents[k] == 0) continue;
      Expr factor = Expr::variable(names[k]);
      if (t.exponents[k] > 1)
        factor = Expr::binary(Op::Pow, factor, Expr::constant(Rational(t.exponents[k])));
      monomial = monomial.valid() ? monomial * factor : factor;
    }
    Expr term;
    if (!monomial.valid()) {
      term = Expr::constant(t.coeff);
    } else if (t.coeff == 1) {
      term = monomial;
    } else {
      term = Expr::constant(t.coeff) * monomial;
    }
    sum = sum.valid() ? sum + term : term;
  }
  return sum;
}

}  // namespace

Expr RationalFunction::to_expr(std::span<const std::string> var_names) const {
  if (var_names.size() != n_vars()) throw DimensionError("variable name count mismatch");
  Expr num = polynomial_expr(numerator_, var_names);
  if (denominator_.terms().size() == 1 && denominator_.terms().front().coeff == 1 &&
      std::accumulate(denominator_.terms().front().exponents.begin(),
                      denominator_.terms().front().exponents.end(), 0u) == 0) {
    return num;
  }
  return num / polynomial_expr(denominator_, var_names);
}

std::string RationalFunction::to_string(std::span<const std::string> var_names) const {
  return "(" + numerator_.to_string(var_names) + ")/(" + denominator_.to_string(var_names) + ")";
}

std::vector<std::string> default_var_names(std::size_t n_vars) {
  if (n_vars == 1) return {"x"};
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n_vars; ++k) names.push_back("x" + std::to_string(k + 1));
  return names;
}

}  // namespace ratprog
