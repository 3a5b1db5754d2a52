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

#include "ratprog/expr_parser.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "ratprog/errors.hpp"

namespace ratprog {

namespace {

enum class Tok { Number, Ident, Op, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      if (i < src.size() && (std::isalpha(static_cast<unsigned char>(src[i])) || src[i] == '.'))
        throw ParseError("malformed number at offset " + std::to_string(start), start);
      tokens.push_back({Tok::Number, std::string(src.substr(start, i - start)), start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      tokens.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
    } else if (c == '(') {
      tokens.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      tokens.push_back({Tok::RParen, ")", i++});
    } else if (c == ',') {
      tokens.push_back({Tok::Comma, ",", i++});
    } else {
      auto two = src.substr(i, 2);
      if (two == "**" || two == "<=" || two == ">=" || two == "==") {
        tokens.push_back({Tok::Op, std::string(two), i});
        i += 2;
      } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '<' || c == '>') {
        tokens.push_back({Tok::Op, std::string(1, c), i++});
      } else {
        throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " +
                             std::to_string(i),
                         i);
      }
    }
  }
  tokens.push_back({Tok::End, "", src.size()});
  return tokens;
}

struct Typed {
  Expr expr;
  std::size_t offset;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  Expr parse_all() {
    Typed t = or_expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return t.expr;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, peek().offset); }
  [[noreturn]] static void fail_at(const std::string& msg, std::size_t offset) {
    throw ParseError("syntax error at offset " + std::to_string(offset) + ": " + msg, offset);
  }

  bool accept_op(const char* op) {
    if (peek().kind == Tok::Op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_keyword(const char* kw) {
    if (peek().kind == Tok::Ident && peek().text == kw) {
      ++pos_;
      return true;
    }
    return false;
  }

  static void need_number(const Typed& t) {
    if (t.expr.is_boolean()) fail_at("expected a number, found a condition", t.offset);
  }
  static void need_bool(const Typed& t) {
    if (!t.expr.is_boolean()) fail_at("expected a condition, found a number", t.offset);
  }

  Typed or_expr() {
    Typed lhs = and_expr();
    while (accept_keyword("or")) {
      Typed rhs = and_expr();
      need_bool(lhs);
      need_bool(rhs);
      lhs = {Expr::binary(Op::Or, lhs.expr, rhs.expr), lhs.offset};
    }
    return lhs;
  }

  Typed and_expr() {
    Typed lhs = comparison();
    while (accept_keyword("and")) {
      Typed rhs = comparison();
      need_bool(lhs);
      need_bool(rhs);
      lhs = {Expr::binary(Op::And, lhs.expr, rhs.expr), lhs.offset};
    }
    return lhs;
  }

  std::optional<Op> comparison_op() {
    if (peek().kind != Tok::Op) return std::nullopt;
    const std::string& t = peek().text;
    if (t == "<") return Op::Lt;
    if (t == "<=") return Op::Le;
    if (t == "==") return Op::Eq;
    if (t == ">=") return Op::Ge;
    if (t == ">") return Op::Gt;
    return std::nullopt;
  }

  Typed comparison() {
    Typed lhs = sum();
    if (auto op = comparison_op()) {
      ++pos_;
      Typed rhs = sum();
      need_number(lhs);
      need_number(rhs);
      if (comparison_op()) fail("chained comparisons are not supported");
      return {Expr::binary(*op, lhs.expr, rhs.expr), lhs.offset};
    }
    return lhs;
  }

  Typed sum() {
    Typed lhs = term();
    while (true) {
      Op op;
      if (accept_op("+")) {
        op = Op::Add;
      } else if (accept_op("-")) {
        op = Op::Sub;
      } else {
        return lhs;
      }
      Typed rhs = term();
      need_number(lhs);
      need_number(rhs);
      lhs = {Expr::binary(op, lhs.expr, rhs.expr), lhs.offset};
    }
  }

  Typed term() {
    Typed lhs = unary();
    while (true) {
      Op op;
      if (accept_op("*")) {
        op = Op::Mul;
      } else if (accept_op("/")) {
        op = Op::Div;
      } else {
        return lhs;
      }
      Typed rhs = unary();
      need_number(lhs);
      need_number(rhs);
      lhs = {Expr::binary(op, lhs.expr, rhs.expr), lhs.offset};
    }
  }

  Typed unary() {
    std::size_t at = peek().offset;
    if (accept_op("-")) {
      Typed operand = unary();
      need_number(operand);
      return {Expr::unary(Op::Neg, operand.expr), at};
    }
    return power();
  }

  Typed power() {
    Typed base = not_expr();
    if (accept_op("**")) {
      Typed exponent = unary();
      need_number(base);
      need_number(exponent);
      return {Expr::binary(Op::Pow, base.expr, exponent.expr), base.offset};
    }
    return base;
  }

  Typed not_expr() {
    std::size_t at = peek().offset;
    if (accept_keyword("not")) {
      Typed operand = not_expr();
      need_bool(operand);
      return {Expr::unary(Op::Not, operand.expr), at};
    }
    return primary();
  }

  Typed primary() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Number: {
        ++pos_;
        return {Expr::constant(Rational(Integer(tok.text))), tok.offset};
      }
      case Tok::LParen: {
        ++pos_;
        Typed inner = or_expr();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        ++pos_;
        return {inner.expr, tok.offset};
      }
      case Tok::Ident: {
        if (tok.text == "and" || tok.text == "or" || tok.text == "not")
          fail("unexpected keyword '" + tok.text + "'");
        ++pos_;
        if (peek().kind == Tok::LParen) return call(tok);
        return {Expr::variable(tok.text), tok.offset};
      }
      case Tok::End:
        fail("unexpected end of expression");
      default:
        fail("unexpected '" + tok.text + "'");
    }
  }

  Typed call(const Token& name) {
    Op op;
    std::size_t arity;
    if (name.text == "floor") {
      op = Op::Floor, arity = 1;
    } else if (name.text == "ceil") {
      op = Op::Ceil, arity = 1;
    } else if (name.text == "min") {
      op = Op::Min, arity = 2;
    } else if (name.text == "max") {
      op = Op::Max, arity = 2;
    } else if (name.text == "quo") {
      op = Op::Quo, arity = 2;
    } else if (name.text == "rem") {
      op = Op::Rem, arity = 2;
    } else {
      fail_at("unknown function '" + name.text + "'", name.offset);
    }
    ++pos_;  // '('
    std::vector<Typed> args;
    if (peek().kind != Tok::RParen) {
      while (true) {
        args.push_back(or_expr());
        need_number(args.back());
        if (peek().kind == Tok::Comma) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    if (peek().kind != Tok::RParen) fail("expected ')' or ','");
    ++pos_;
    if (args.size() != arity)
      fail_at(name.text + " takes " + std::to_string(arity) + " argument(s), got " +
                  std::to_string(args.size()),
              name.offset);
    if (arity == 1) return {Expr::unary(op, args[0].expr), name.offset};
    return {Expr::binary(op, args[0].expr, args[1].expr), name.offset};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse_all(); }

Expr parse_condition(std::string_view text) {
  Expr e = parse_expression(text);
  if (!e.is_boolean()) throw ParseError("expected a condition, found a number", 0);
  return e;
}

Expr parse_arithmetic(std::string_view text) {
  Expr e = parse_expression(text);
  if (e.is_boolean()) throw ParseError("expected a number, found a condition", 0);
  return e;
}

}  // namespace ratprog
