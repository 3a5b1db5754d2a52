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

#include "ratprog/codegen.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

#include "ratprog/errors.hpp"

namespace ratprog {

namespace {

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "auto",     "break",  "case",     "char",   "const",    "continue", "default", "do",
      "double",   "else",   "enum",     "extern", "float",    "for",      "goto",    "if",
      "inline",   "int",    "long",     "register", "restrict", "return", "short",   "signed",
      "sizeof",   "static", "struct",   "switch", "typedef",  "union",    "unsigned", "void",
      "volatile", "while",  "_Bool",    "_Complex", "_Imaginary", "floor", "ceil",   "fmin",
      "fmax",     "pow",    "rp_quo",   "rp_rem"};
  return words;
}

std::string c_number(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", to_double(q));
  std::string s(buf);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

void need_helpers(const Expr& e, bool& quo, bool& rem) {
  if (e.op() == Op::Quo) quo = true;
  if (e.op() == Op::Rem) quo = rem = true;
  for (const auto& a : e.args()) need_helpers(a, quo, rem);
}

std::string c_expr(const Expr& e) {
  auto bin = [&](const char* op) { return "(" + c_expr(e.arg(0)) + " " + op + " " + c_expr(e.arg(1)) + ")"; };
  auto call = [&](const char* fn) {
    std::string s = std::string(fn) + "(" + c_expr(e.arg(0));
    if (e.args().size() > 1) s += ", " + c_expr(e.arg(1));
    return s + ")";
  };
  switch (e.op()) {
    case Op::Constant: {
      std::string s = c_number(e.value());
      return e.value() < 0 ? "(" + s + ")" : s;
    }
    case Op::Variable: return e.name();
    case Op::Neg: return "(-" + c_expr(e.arg(0)) + ")";
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Mul: return bin("*");
    case Op::Div: return bin("/");
    case Op::Pow: return call("pow");
    case Op::Floor: return call("floor");
    case Op::Ceil: return call("ceil");
    case Op::Quo: return call("rp_quo");
    case Op::Rem: return call("rp_rem");
    case Op::Min: return call("fmin");
    case Op::Max: return call("fmax");
    case Op::Lt: return bin("<");
    case Op::Le: return bin("<=");
    case Op::Eq: return bin("==");
    case Op::Ge: return bin(">=");
    case Op::Gt: return bin(">");
    case Op::And: return bin("&&");
    case Op::Or: return bin("||");
    case Op::Not: return "(!" + c_expr(e.arg(0)) + ")";
  }
  return "0";
}

void check_name(const std::string& name) {
  bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
  for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  if (!ok) throw DomainError("'" + name + "' is not a C identifier");
  if (reserved_words().count(name))
    throw DomainError("'" + name + "' cannot be used as a C identifier");
}

}  // namespace

std::string emit_c_source(const RationalProgram& prog, const std::string& function_name) {
  for (const auto& [id, node] : prog.nodes) {
    if (auto* p = std::get_if<ProcessNode>(&node))
      for (const auto& a : p->assignments)
        if (a.slot) throw BindingError("cannot emit C: slot '" + *a.slot + "' at node '" + id + "' is not bound");
  }
  require_valid(prog);
  check_name(function_name);

  auto order = node_order(prog);
  std::map<NodeId, std::string> label;
  for (std::size_t i = 0; i < order.size(); ++i) label[order[i]] = "node_" + std::to_string(i);

  std::set<std::string> inputs(prog.input_vars.begin(), prog.input_vars.end());
  std::set<std::string> locals;
  bool quo = false, rem = false;
  for (const auto& [id, node] : prog.nodes) {
    if (auto* d = std::get_if<DecisionNode>(&node)) {
      need_helpers(d->condition, quo, rem);
    } else if (auto* p = std::get_if<ProcessNode>(&node)) {
      for (const auto& a : p->assignments) {
        need_helpers(a.expr, quo, rem);
        if (!inputs.count(a.target)) locals.insert(a.target);
      }
    } else {
      need_helpers(std::get<TerminalNode>(node).value, quo, rem);
    }
  }
  for (const auto& v : inputs) check_name(v);
  for (const auto& v : locals) check_name(v);

  std::string out;
  out += "/* Generated by ratprog. Do not edit. */\n";
  out += "#include <math.h>\n\n";
  if (quo) {
    out += "static double rp_quo(double a, double b) {\n";
    out += "  return b > 0 ? floor(a / b) : -floor(a / -b);\n";
    out += "}\n\n";
  }
  if (rem) {
    out += "static double rp_rem(double a, double b) {\n";
    out += "  return a - b * rp_quo(a, b);\n";
    out += "}\n\n";
  }
  out += "double " + function_name + "(";
  for (std::size_t i = 0; i < prog.input_vars.size(); ++i) {
    if (i) out += ", ";
    out += "double " + prog.input_vars[i];
  }
  if (prog.input_vars.empty()) out += "void";
  out += ") {\n";
  for (const auto& v : locals) out += "  double " + v + " = 0.0;\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId& id = order[i];
    const Node& node = prog.nodes.at(id);
    out += label[id] + ": /* " + id + " */\n";
    if (auto* d = std::get_if<DecisionNode>(&node)) {
      out += "  if (" + c_expr(d->condition) + ") goto " + label[d->on_true] + ";\n";
      out += "  goto " + label[d->on_false] + ";\n";
    } else if (auto* p = std::get_if<ProcessNode>(&node)) {
      for (const auto& a : p->assignments) out += "  " + a.target + " = " + c_expr(a.expr) + ";\n";
      out += "  goto " + label[p->next] + ";\n";
    } else {
      out += "  return " + c_expr(std::get<TerminalNode>(node).value) + ";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace ratprog
