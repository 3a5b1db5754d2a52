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

#include "ratprog/expr.hpp"

#include <stdexcept>

#include "ratprog/errors.hpp"

namespace ratprog {

bool is_boolean(Op op) {
  switch (op) {
    case Op::Lt:
    case Op::Le:
    case Op::Eq:
    case Op::Ge:
    case Op::Gt:
    case Op::And:
    case Op::Or:
    case Op::Not:
      return true;
    default:
      return false;
  }
}

bool is_comparison(Op op) {
  return op == Op::Lt || op == Op::Le || op == Op::Eq || op == Op::Ge || op == Op::Gt;
}

bool is_integer_part(Op op) {
  return op == Op::Floor || op == Op::Ceil || op == Op::Quo || op == Op::Rem;
}

Expr Expr::constant(const Rational& value) {
  return Expr(std::make_shared<const Node>(Node{Op::Constant, value, {}, {}}));
}

Expr Expr::variable(std::string name) {
  return Expr(std::make_shared<const Node>(Node{Op::Variable, 0, std::move(name), {}}));
}

Expr Expr::unary(Op op, Expr arg) {
  return Expr(std::make_shared<const Node>(Node{op, 0, {}, {std::move(arg)}}));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{op, 0, {}, {std::move(lhs), std::move(rhs)}}));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.op() != b.op() || a.args().size() != b.args().size()) return false;
  if (a.op() == Op::Constant) return a.value() == b.value();
  if (a.op() == Op::Variable) return a.name() == b.name();
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!(a.args()[i] == b.args()[i])) return false;
  return true;
}

Expr operator+(Expr a, Expr b) { return Expr::binary(Op::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(Op::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(Op::Mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::binary(Op::Div, std::move(a), std::move(b)); }
Expr operator-(Expr a) { return Expr::unary(Op::Neg, std::move(a)); }

namespace {

constexpr long kMaxExponent = 4096;

const char* op_name(Op op);

}  // namespace

Rational evaluate_number(const Expr& e, const Valuation& env) {
  switch (e.op()) {
    case Op::Constant:
      return e.value();
    case Op::Variable: {
      auto it = env.find(e.name());
      if (it == env.end()) throw EvalError("unknown variable '" + e.name() + "'");
      return it->second;
    }
    case Op::Neg:
      return -evaluate_number(e.arg(0), env);
    case Op::Add:
      return evaluate_number(e.arg(0), env) + evaluate_number(e.arg(1), env);
    case Op::Sub:
      return evaluate_number(e.arg(0), env) - evaluate_number(e.arg(1), env);
    case Op::Mul:
      return evaluate_number(e.arg(0), env) * evaluate_number(e.arg(1), env);
    case Op::Div: {
      Rational den = evaluate_number(e.arg(1), env);
      if (den == 0) throw EvalError("division by zero in '" + to_string(e) + "'");
      return evaluate_number(e.arg(0), env) / den;
    }
    case Op::Pow: {
      Rational base = evaluate_number(e.arg(0), env);
      Rational exponent = evaluate_number(e.arg(1), env);
      if (!is_integer(exponent)) throw EvalError("non-integer exponent in '" + to_string(e) + "'");
      if (abs(exponent) > kMaxExponent)
        throw EvalError("exponent too large in '" + to_string(e) + "'");
      long k = static_cast<long>(boost::multiprecision::numerator(exponent));
      if (k < 0) {
        if (base == 0) throw EvalError("zero raised to a negative power in '" + to_string(e) + "'");
        return 1 / power(base, static_cast<unsigned>(-k));
      }
      return power(base, static_cast<unsigned>(k));
    }
    case Op::Floor:
      return floor(evaluate_number(e.arg(0), env));
    case Op::Ceil:
      return ceil(evaluate_number(e.arg(0), env));
    case Op::Quo:
    case Op::Rem: {
      Rational a = evaluate_number(e.arg(0), env);
      Rational b = evaluate_number(e.arg(1), env);
      if (b == 0) throw EvalError("euclidean division by zero in '" + to_string(e) + "'");
      return e.op() == Op::Quo ? euclidean_quotient(a, b) : euclidean_remainder(a, b);
    }
    case Op::Min: {
      Rational a = evaluate_number(e.arg(0), env);
      Rational b = evaluate_number(e.arg(1), env);
      return a <= b ? a : b;
    }
    case Op::Max: {
      Rational a = evaluate_number(e.arg(0), env);
      Rational b = evaluate_number(e.arg(1), env);
      return a >= b ? a : b;
    }
    default:
      throw EvalError(std::string("boolean '") + op_name(e.op()) + "' used where a number is expected");
  }
}

bool evaluate_bool(const Expr& e, const Valuation& env) {
  switch (e.op()) {
    case Op::Lt:
      return evaluate_number(e.arg(0), env) < evaluate_number(e.arg(1), env);
    case Op::Le:
      return evaluate_number(e.arg(0), env) <= evaluate_number(e.arg(1), env);
    case Op::Eq:
      return evaluate_number(e.arg(0), env) == evaluate_number(e.arg(1), env);
    case Op::Ge:
      return evaluate_number(e.arg(0), env) >= evaluate_number(e.arg(1), env);
    case Op::Gt:
      return evaluate_number(e.arg(0), env) > evaluate_number(e.arg(1), env);
    case Op::And:
      return evaluate_bool(e.arg(0), env) && evaluate_bool(e.arg(1), env);
    case Op::Or:
      return evaluate_bool(e.arg(0), env) || evaluate_bool(e.arg(1), env);
    case Op::Not:
      return !evaluate_bool(e.arg(0), env);
    default:
      throw EvalError("number '" + to_string(e) + "' used where a condition is expected");
  }
}

namespace {

void collect_variables(const Expr& e, std::set<std::string>& out) {
  if (e.op() == Op::Variable) out.insert(e.name());
  for (const auto& a : e.args()) collect_variables(a, out);
}

}  // namespace

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  collect_variables(e, out);
  return out;
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& replacements) {
  if (e.op() == Op::Variable) {
    auto it = replacements.find(e.name());
    return it == replacements.end() ? e : it->second;
  }
  if (e.op() == Op::Constant) return e;
  if (e.args().size() == 1) return Expr::unary(e.op(), substitute(e.arg(0), replacements));
  return Expr::binary(e.op(), substitute(e.arg(0), replacements),
                      substitute(e.arg(1), replacements));
}

bool contains_op(const Expr& e, bool (*pred)(Op)) {
  if (pred(e.op())) return true;
  for (const auto& a : e.args())
    if (contains_op(a, pred)) return true;
  return false;
}

namespace {

const char* op_name(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Pow: return "**";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Eq: return "==";
    case Op::Ge: return ">=";
    case Op::Gt: return ">";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Not: return "not";
    case Op::Neg: return "-";
    case Op::Floor: return "floor";
    case Op::Ceil: return "ceil";
    case Op::Quo: return "quo";
    case Op::Rem: return "rem";
    case Op::Min: return "min";
    case Op::Max: return "max";
    case Op::Constant: return "constant";
    case Op::Variable: return "variable";
  }
  return "?";
}

// Binding strength, matching the grammar levels in expr_parser.hpp.
enum Level { kOr = 1, kAnd, kCmp, kSum, kTerm, kUnary, kPower, kNot, kPrimary };

int level(const Expr& e) {
  switch (e.op()) {
    case Op::Constant:
      if (!is_integer(e.value())) return kTerm;
      return e.value() < 0 ? kUnary : kPrimary;
    case Op::Or: return kOr;
    case Op::And: return kAnd;
    case Op::Lt:
    case Op::Le:
    case Op::Eq:
    case Op::Ge:
    case Op::Gt: return kCmp;
    case Op::Add:
    case Op::Sub: return kSum;
    case Op::Mul:
    case Op::Div: return kTerm;
    case Op::Neg: return kUnary;
    case Op::Pow: return kPower;
    case Op::Not: return kNot;
    default: return kPrimary;
  }
}

void render(const Expr& e, int min_level, std::string& out);

void render_child(const Expr& e, int min_level, std::string& out) {
  if (level(e) < min_level) {
    out += '(';
    render(e, kOr, out);
    out += ')';
  } else {
    render(e, min_level, out);
  }
}

void render(const Expr& e, int /*min_level*/, std::string& out) {
  switch (e.op()) {
    case Op::Constant:
      out += ratprog::to_string(e.value());
      return;
    case Op::Variable:
      out += e.name();
      return;
    case Op::Neg:
      out += '-';
      render_child(e.arg(0), kUnary, out);
      return;
    case Op::Not:
      out += "not ";
      render_child(e.arg(0), kNot, out);
      return;
    case Op::Floor:
    case Op::Ceil:
    case Op::Quo:
    case Op::Rem:
    case Op::Min:
    case Op::Max:
      out += op_name(e.op());
      out += '(';
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += ", ";
        render(e.arg(i), kOr, out);
      }
      out += ')';
      return;
    case Op::Pow:
      render_child(e.arg(0), kNot, out);
      out += "**";
      render_child(e.arg(1), kUnary, out);
      return;
    default:
      break;
  }
  int lv = level(e);
  bool spaced = !(e.op() == Op::Mul || e.op() == Op::Div);
  int left_min = lv, right_min = lv + 1;
  if (lv == kCmp) left_min = right_min = kSum;
  render_child(e.arg(0), left_min, out);
  if (spaced) out += ' ';
  out += op_name(e.op());
  if (spaced) out += ' ';
  render_child(e.arg(1), right_min, out);
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  render(e, kOr, out);
  return out;
}

}  // namespace ratprog
