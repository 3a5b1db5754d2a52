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

#include <doctest.h>

#include <vector>

#include "ratprog/errors.hpp"
#include "ratprog/expr.hpp"
#include "ratprog/random.hpp"
#include "ratprog/ratfunc.hpp"

using namespace ratprog;

namespace {

Polynomial poly1(std::vector<std::pair<long, unsigned>> terms) {
  std::vector<Term> out;
  for (auto [c, e] : terms) out.push_back({Rational(c), {e}});
  return Polynomial(1, out);
}

Polynomial random_poly(Rng& rng, std::size_t n_vars, unsigned max_deg) {
  std::vector<Term> terms;
  auto count = rng.below(6);
  for (std::size_t i = 0; i < count; ++i) {
    Exponents e(n_vars);
    for (auto& x : e) x = static_cast<unsigned>(rng.below(max_deg + 1));
    terms.push_back({Rational(static_cast<long>(rng.below(21)) - 10, static_cast<long>(rng.below(5)) + 1), e});
  }
  return Polynomial(n_vars, terms);
}

std::vector<Rational> random_point(Rng& rng, std::size_t n) {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < n; ++i)
    p.emplace_back(static_cast<long>(rng.below(31)) - 15, static_cast<long>(rng.below(6)) + 1);
  return p;
}

}  // namespace

TEST_CASE("poly_eval examples") {
  std::vector<Rational> p73 = {7, 3};
  CHECK(Polynomial(2).evaluate(p73) == 0);

  std::vector<Rational> x3 = {3};
  CHECK(poly1({{1, 0}, {2, 1}}).evaluate(x3) == 7);

  Polynomial xy2(2, {{Rational(1), {1, 2}}});
  std::vector<Rational> p23 = {2, 3};
  CHECK(xy2.evaluate(p23) == 18);

  std::vector<Rational> bad = {1, 2, 3};
  CHECK_THROWS_AS(xy2.evaluate(bad), DimensionError);
}

TEST_CASE("ratfunc_eval examples") {
  RationalFunction f(poly1({{2, 1}, {1, 0}}), poly1({{1, 1}, {1, 0}}));
  std::vector<Rational> x0 = {0}, x10 = {10}, xm1 = {-1};
  CHECK(f.evaluate(x0) == 1);
  CHECK(f.evaluate(x10) == Rational(21, 11));
  CHECK_THROWS_AS(f.evaluate(xm1), PoleError);
  try {
    f.evaluate(xm1);
  } catch (const PoleError& e) {
    CHECK(std::string(e.what()).find("-1") != std::string::npos);
  }
}

TEST_CASE("canonicalize examples") {
  RationalFunction f(poly1({{2, 1}, {2, 0}}), poly1({{2, 1}, {4, 0}}));
  RationalFunction want(poly1({{1, 1}, {1, 0}}), poly1({{1, 1}, {2, 0}}));
  CHECK(f.canonical() == want);

  RationalFunction c(Polynomial::constant(1, 3), Polynomial::constant(1, 6));
  CHECK(c.canonical() == RationalFunction(Polynomial::constant(1, Rational(1, 2)), Polynomial::constant(1, 1)));

  CHECK(want.canonical() == want);
}

TEST_CASE("zero denominator rejected") {
  CHECK_THROWS_AS(RationalFunction(poly1({{1, 0}}), Polynomial(1)), DomainError);
}

TEST_CASE("monomial_basis examples") {
  std::vector<unsigned> b0 = {0}, b11 = {1, 1}, b2 = {2};
  CHECK(monomial_basis(b0) == std::vector<Exponents>{{0}});
  CHECK(monomial_basis(b11) == std::vector<Exponents>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(monomial_basis(b2) == std::vector<Exponents>{{0}, {1}, {2}});
}

TEST_CASE("monomial_basis length is the product of bound+1") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<unsigned> b(1 + rng.below(3));
    std::size_t want = 1;
    for (auto& x : b) {
      x = static_cast<unsigned>(rng.below(5));
      want *= x + 1;
    }
    auto basis = monomial_basis(b);
    CHECK(basis.size() == want);
    for (std::size_t i = 1; i < basis.size(); ++i) CHECK(grlex_less(basis[i - 1], basis[i]));
  }
}

TEST_CASE("polynomial normalization") {
  Polynomial p(1, {{Rational(2), {1}}, {Rational(-2), {1}}, {Rational(3), {0}}, {Rational(1), {0}}});
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms()[0] == Term{Rational(4), {0}});
  CHECK_THROWS_AS(Polynomial(2, {{Rational(1), {1}}}), DimensionError);
}

TEST_CASE("text forms") {
  std::vector<std::string> names = {"x"};
  RationalFunction f(poly1({{2, 1}, {1, 0}}), poly1({{1, 1}, {1, 0}}));
  CHECK(f.to_string(names) == "(2*x + 1)/(x + 1)");
  Polynomial p(2, {{Rational(-3, 2), {2, 1}}, {Rational(1), {0, 0}}});
  std::vector<std::string> xy = {"x1", "x2"};
  CHECK(p.to_string(xy) == "-3/2*x1^2*x2 + 1");
  CHECK(Polynomial(2).to_string(xy) == "0");
}

TEST_CASE("poly_eval is linear") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_poly(rng, 2, 3);
    auto q = random_poly(rng, 2, 3);
    auto x = random_point(rng, 2);
    CHECK((p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x));
  }
}

TEST_CASE("scaling and canonical form preserve evaluation") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto num = random_poly(rng, 2, 2);
    auto den = random_poly(rng, 2, 2);
    if (den.is_zero()) continue;
    RationalFunction f(num, den);
    Rational c(static_cast<long>(rng.below(19)) - 9, static_cast<long>(rng.below(5)) + 1);
    if (c == 0) c = 7;
    auto g = f.scaled(c);
    auto h = f.canonical();
    CHECK(h.canonical() == h);
    CHECK(h.denominator().leading_coefficient() == 1);
    for (int k = 0; k < 100; ++k) {
      auto x = random_point(rng, 2);
      if (den.evaluate(x) == 0) continue;
      auto v = f.evaluate(x);
      CHECK(g.evaluate(x) == v);
      CHECK(h.evaluate(x) == v);
    }
  }
}

TEST_CASE("to_expr evaluates like the function") {
  Rng rng(8);
  std::vector<std::string> names = {"a", "b"};
  for (int trial = 0; trial < 30; ++trial) {
    auto den = random_poly(rng, 2, 2);
    if (den.is_zero()) continue;
    RationalFunction f(random_poly(rng, 2, 2), den);
    Expr e = f.to_expr(names);
    for (int k = 0; k < 20; ++k) {
      auto x = random_point(rng, 2);
      if (den.evaluate(x) == 0) continue;
      CHECK(evaluate_number(e, {{"a", x[0]}, {"b", x[1]}}) == f.evaluate(x));
    }
  }
}

TEST_CASE("degree bounds") {
  auto b = DegreeBounds::uniform(3, 2);
  CHECK(b.unknowns() == 54);
  CHECK_THROWS_AS((DegreeBounds{{1}, {1, 1}}).check(), DimensionError);
}
