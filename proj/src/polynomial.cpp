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

#include "ratprog/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ratprog/errors.hpp"

namespace ratprog {

namespace {

unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const { return grlex_less(a, b); }
};

}  // namespace

bool grlex_less(const Exponents& a, const Exponents& b) {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

std::vector<Exponents> monomial_basis(std::span<const unsigned> bounds) {
  std::vector<Exponents> basis;
  Exponents current(bounds.size(), 0);
  // Odometer over the box, then sort.
  while (true) {
    basis.push_back(current);
    std::size_t k = 0;
    for (; k < current.size(); ++k) {
      if (current[k] < bounds[k]) {
        ++current[k];
        break;
      }
      current[k] = 0;
    }
    if (k == current.size()) break;
  }
  std::sort(basis.begin(), basis.end(), grlex_less);
  return basis;
}

Polynomial::Polynomial(std::size_t n_vars) : n_vars_(n_vars) {}

Polynomial::Polynomial(std::size_t n_vars, std::vector<Term> terms) : n_vars_(n_vars) {
  std::map<Exponents, Rational, GrlexLess> merged;
  for (auto& t : terms) {
    if (t.exponents.size() != n_vars_)
      throw DimensionError("term has " + std::to_string(t.exponents.size()) +
                           " exponents, polynomial has " + std::to_string(n_vars_) +
                           " variables");
    merged[t.exponents] += t.coeff;
  }
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
    if (it->second != 0) terms_.push_back(Term{it->second, it->first});
  }
}

Polynomial Polynomial::constant(std::size_t n_vars, const Rational& c) {
  return Polynomial(n_vars, {Term{c, Exponents(n_vars, 0)}});
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != n_vars_)
    throw DimensionError("point has " + std::to_string(point.size()) +
                         " coordinates, polynomial has " + std::to_string(n_vars_) +
                         " variables");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational product = t.coeff;
    for (std::size_t k = 0; k < n_vars_; ++k) {
      if (t.exponents[k] != 0) product *= power(point[k], t.exponents[k]);
    }
    sum += product;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != n_vars_)
    throw DimensionError("point has " + std::to_string(point.size()) +
                         " coordinates, polynomial has " + std::to_string(n_vars_) +
                         " variables");
  double sum = 0;
  for (const auto& t : terms_) {
    double product = to_double(t.coeff);
    for (std::size_t k = 0; k < n_vars_; ++k) {
      if (t.exponents[k] != 0) product *= std::pow(point[k], static_cast<double>(t.exponents[k]));
    }
    sum += product;
  }
  return sum;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (other.n_vars_ != n_vars_) throw DimensionError("adding polynomials in different variables");
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return Polynomial(n_vars_, std::move(all));
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::scaled(const Rational& c) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff *= c;
  return Polynomial(n_vars_, std::move(out));
}

Rational Polynomial::leading_coefficient() const {
  return terms_.empty() ? Rational(0) : terms_.front().coeff;
}

std::string Polynomial::to_string(std::span<const std::string> var_names) const {
  if (var_names.size() != n_vars_) throw DimensionError("variable name count mismatch");
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    bool negative = t.coeff < 0;
    Rational magnitude = abs(t.coeff);
    if (i == 0) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string monomial;
    for (std::size_t k = 0; k < n_vars_; ++k) {
      if (t.exponents[k] == 0) continue;
      if (!monomial.empty()) monomial += "*";
      monomial += var_names[k];
      if (t.exponents[k] > 1) monomial += "^" + std::to_string(t.exponents[k]);
    }
    if (monomial.empty()) {
      out += ratprog::to_string(magnitude);
    } else if (magnitude == 1) {
      out += monomial;
    } else {
      out += ratprog::to_string(magnitude) + "*" + monomial;
    }
  }
  return out;
}

}  // namespace ratprog
