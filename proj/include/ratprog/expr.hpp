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

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ratprog/rational.hpp"

namespace ratprog {

/// Variable name -> exact value.
using Valuation = std::map<std::string, Rational>;

enum class Op {
  // Arithmetic.
  Constant,
  Variable,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Floor,
  Ceil,
  Quo,  // Euclidean quotient.
  Rem,  // Euclidean remainder.
  Min,
  Max,
  // Boolean.
  Lt,
  Le,
  Eq,
  Ge,
  Gt,
  And,
  Or,
  Not,
};

bool is_boolean(Op op);
bool is_comparison(Op op);
/// floor, ceil, quotient, remainder: operations that take the integer part.
bool is_integer_part(Op op);

/// Immutable expression tree with shared subtrees. Cheap to copy.
class Expr {
 public:
  struct Node {
    Op op;
    Rational value;
    std::string name;
    std::vector<Expr> args;
  };

  Expr() = default;

  static Expr constant(const Rational& value);
  static Expr variable(std::string name);
  static Expr unary(Op op, Expr arg);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  bool valid() const { return node_ != nullptr; }
  Op op() const { return node_->op; }
  const Rational& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  const std::vector<Expr>& args() const { return node_->args; }
  const Expr& arg(std::size_t i) const { return node_->args.at(i); }

  bool is_boolean() const { return ratprog::is_boolean(op()); }

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

/// Evaluates an arithmetic expression exactly. Throws EvalError on unknown
/// variables, division by zero, or a boolean operand where a number is
/// expected.
Rational evaluate_number(const Expr& e, const Valuation& env);
bool evaluate_bool(const Expr& e, const Valuation& env);

/// Variables read by `e`, sorted.
std::set<std::string> free_variables(const Expr& e);

/// Replaces variables by expressions; unmapped variables stay.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& replacements);

bool contains_op(const Expr& e, bool (*pred)(Op));

/// Renders in the constraint-language grammar with minimal parentheses.
std::string to_string(const Expr& e);

}  // namespace ratprog
