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

#include <string>

#include "ratprog/errors.hpp"
#include "ratprog/expr.hpp"
#include "ratprog/expr_parser.hpp"
#include "ratprog/random.hpp"

using namespace ratprog;

namespace {

Rational num(std::string_view text, const Valuation& env = {}) { return evaluate_number(parse_arithmetic(text), env); }
bool cond(std::string_view text, const Valuation& env = {}) { return evaluate_bool(parse_condition(text), env); }

std::size_t error_offset(std::string_view text) {
  try {
    parse_expression(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("expected a parse error for '" << std::string(text) << "'");
  return 0;
}

Expr random_arith(Rng& rng, int depth) {
  static const char* vars[] = {"bx", "by", "bz", "N"};
  if (depth == 0 || rng.below(4) == 0) {
    if (rng.below(2)) return Expr::variable(vars[rng.below(4)]);
    return Expr::constant(Rational(static_cast<long>(rng.below(20))));
  }
  Expr a = random_arith(rng, depth - 1);
  Expr b = random_arith(rng, depth - 1);
  switch (rng.below(11)) {
    case 0: return a + b;
    case 1: return a - b;
    case 2: return a * b;
    case 3: return a / b;
    case 4: return -a;
    case 5: return Expr::binary(Op::Pow, a, Expr::constant(Rational(static_cast<long>(rng.below(3)))));
    case 6: return Expr::unary(Op::Floor, a);
    case 7: return Expr::unary(Op::Ceil, a);
    case 8: return Expr::binary(Op::Min, a, b);
    case 9: return Expr::binary(Op::Quo, a, b);
    default: return Expr::binary(Op::Max, a, b);
  }
}

Expr random_bool(Rng& rng, int depth) {
  if (depth == 0 || rng.below(3) == 0) {
    static const Op cmps[] = {Op::Lt, Op::Le, Op::Eq, Op::Ge, Op::Gt};
    return Expr::binary(cmps[rng.below(5)], random_arith(rng, 2), random_arith(rng, 2));
  }
  switch (rng.below(3)) {
    case 0: return Expr::binary(Op::And, random_bool(rng, depth - 1), random_bool(rng, depth - 1));
    case 1: return Expr::binary(Op::Or, random_bool(rng, depth - 1), random_bool(rng, depth - 1));
    default: return Expr::unary(Op::Not, random_bool(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("constraint examples") {
  CHECK(cond("bx <= by**2 and bx < N", {{"bx", 4}, {"by", 2}, {"N", 16}}));
  CHECK(num("ceil(N/bx)", {{"N", 5}, {"bx", 2}}) == 3);
  CHECK(error_offset("bx <") == 4);
}

TEST_CASE("precedence") {
  CHECK(num("1 + 2*3") == 7);
  CHECK(num("(1 + 2)*3") == 9);
  CHECK(num("2**3**2") == 512);
  CHECK(num("-2**2") == -4);
  CHECK(num("2**-1") == Rational(1, 2));
  CHECK(num("7/2") == Rational(7, 2));
  CHECK(num("10 - 4 - 3") == 3);
  CHECK(num("12/2/3") == 2);
  CHECK(cond("1 < 2 or 2 < 1 and 3 < 1"));
  CHECK_FALSE(cond("(1 < 2 or 2 < 1) and 3 < 1"));
  CHECK(cond("not (1 > 2)"));
  CHECK(cond("not not (1 < 2)"));
}

TEST_CASE("functions") {
  CHECK(num("floor(-7/2)") == -4);
  CHECK(num("ceil(-7/2)") == -3);
  CHECK(num("min(3, 8/3)") == Rational(8, 3));
  CHECK(num("max(3, 8/3)") == 3);
  CHECK(num("quo(7, 2)") == 3);
  CHECK(num("rem(7, 2)") == 1);
  CHECK(num("quo(-7, 2)") == -4);
  CHECK(num("rem(-7, 2)") == 1);
  CHECK(num("quo(7, -2)") == -3);
  CHECK(num("rem(7, -2)") == 1);
}

TEST_CASE("euclidean division identity") {
  for (long a = -20; a <= 20; ++a)
    for (long b = -6; b <= 6; ++b) {
      if (b == 0) continue;
      Valuation env{{"a", a}, {"b", b}};
      Rational q = num("quo(a, b)", env);
      Rational r = num("rem(a, b)", env);
      CHECK(a == b * q + r);
      CHECK(r >= 0);
      CHECK(r < abs(Rational(b)));
    }
}

TEST_CASE("syntax and type errors") {
  CHECK_THROWS_AS(parse_expression(""), ParseError);
  CHECK_THROWS_AS(parse_expression("1 < 2 < 3"), ParseError);
  CHECK_THROWS_AS(parse_expression("1.5"), ParseError);
  CHECK_THROWS_AS(parse_expression("(bx"), ParseError);
  CHECK_THROWS_AS(parse_expression("bx $ 2"), ParseError);
  CHECK_THROWS_AS(parse_expression("floor(1, 2)"), ParseError);
  CHECK_THROWS_AS(parse_expression("1 and 2"), ParseError);
  CHECK_THROWS_AS(parse_expression("(1 < 2) + 1"), ParseError);
  CHECK_THROWS_AS(parse_expression("not 1"), ParseError);
  CHECK_THROWS_AS(parse_condition("bx + 1"), ParseError);
  CHECK_THROWS_AS(parse_arithmetic("bx < 1"), ParseError);
  CHECK(error_offset("bx + * 2") == 5);
  CHECK(error_offset("bx 2") == 3);
}

TEST_CASE("unknown identifiers fail at evaluation") {
  Expr e = parse_condition("bq < 3");
  CHECK_THROWS_WITH_AS(evaluate_bool(e, {{"bx", 1}}), doctest::Contains("bq"), EvalError);
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(num("1/(bx - bx)", {{"bx", 3}}), EvalError);
  CHECK_THROWS_AS(num("rem(3, 0)"), EvalError);
  CHECK_THROWS_AS(num("0**-1"), EvalError);
  CHECK_THROWS_AS(num("2**(1/2)"), EvalError);
}

TEST_CASE("rendering") {
  CHECK(to_string(parse_expression("(bx*by) <= (N*N)")) == "bx*by <= N*N");
  CHECK(to_string(parse_expression("bx - (by - bz)")) == "bx - (by - bz)");
  CHECK(to_string(parse_expression("(bx - by) - bz")) == "bx - by - bz");
  CHECK(to_string(parse_expression("(2**3)**2")) == "(2**3)**2");
  CHECK(to_string(parse_expression("2**3**2")) == "2**3**2");
  CHECK(to_string(parse_expression("ceil(N / bx)")) == "ceil(N/bx)");
  CHECK(to_string(parse_expression("not (a < b) or c == d and e >= f")) == "not (a < b) or c == d and e >= f");
}

TEST_CASE("parse-render-parse fixpoint") {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    Expr generated = trial % 2 ? random_bool(rng, 3) : random_arith(rng, 4);
    Expr once = parse_expression(to_string(generated));
    Expr twice = parse_expression(to_string(once));
    CHECK_MESSAGE(once == twice, to_string(generated));
    CHECK(to_string(once) == to_string(generated));
  }
}

TEST_CASE("rendered form evaluates identically") {
  Rng rng(23);
  Valuation env{{"bx", 32}, {"by", 4}, {"bz", 2}, {"N", 1000}};
  for (int trial = 0; trial < 300; ++trial) {
    Expr e = random_arith(rng, 4);
    Expr back = parse_expression(to_string(e));
    Rational a, b;
    bool ea = false, eb = false;
    try {
      a = evaluate_number(e, env);
    } catch (const EvalError&) {
      ea = true;
    }
    try {
      b = evaluate_number(back, env);
    } catch (const EvalError&) {
      eb = true;
    }
    CHECK(ea == eb);
    if (!ea && !eb) CHECK(a == b);
  }
}

TEST_CASE("free variables and substitution") {
  Expr e = parse_expression("bx*by + N");
  CHECK(free_variables(e) == std::set<std::string>{"N", "bx", "by"});
  Expr s = substitute(e, {{"N", Expr::constant(5)}});
  CHECK(evaluate_number(s, {{"bx", 2}, {"by", 3}}) == 11);
}
