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

#include "ratprog/ir.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ratprog/errors.hpp"
#include "ratprog/expr_parser.hpp"

namespace ratprog {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& msg) {
  throw SchemaError("schema violation at " + where + ": " + msg);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(where, std::string("missing key '") + key + "'");
  return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_string()) schema(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) schema(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) schema(where + "/" + std::to_string(i), "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  if (s == "and" || s == "or" || s == "not") return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string identifier_member(const json& obj, const char* key, const std::string& where) {
  std::string s = string_member(obj, key, where);
  if (!is_identifier(s)) schema(where + "/" + key, "'" + s + "' is not a valid identifier");
  return s;
}

Expr expr_member(const json& obj, const char* key, const std::string& where) {
  std::string text = string_member(obj, key, where);
  try {
    return parse_expression(text);
  } catch (const ParseError& e) {
    throw ParseError(where + "/" + key + ": " + e.what(), e.position());
  }
}

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document at byte ") + std::to_string(e.byte) + ": " + e.what(),
                     e.byte);
  }
}

RationalProgram program_from_json(const json& doc, bool allow_placeholders) {
  if (!doc.is_object()) schema("/", "expected an object");
  std::string version = string_member(doc, "version", "/");
  if (version != kIrVersion) schema("/version", "unsupported version '" + version + "'");

  RationalProgram prog;
  prog.input_vars = string_list(member(doc, "input_vars", "/"), "/input_vars");
  for (std::size_t i = 0; i < prog.input_vars.size(); ++i) {
    if (!is_identifier(prog.input_vars[i]))
      schema("/input_vars/" + std::to_string(i), "'" + prog.input_vars[i] + "' is not a valid identifier");
  }
  if (std::set<std::string>(prog.input_vars.begin(), prog.input_vars.end()).size() != prog.input_vars.size())
    schema("/input_vars", "duplicate input variable");
  prog.output_var = identifier_member(doc, "output_var", "/");
  prog.entry = string_member(doc, "entry", "/");

  const json& nodes = member(doc, "nodes", "/");
  if (!nodes.is_array() || nodes.empty()) schema("/nodes", "expected a non-empty array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string where = "/nodes/" + std::to_string(i);
    const json& n = nodes[i];
    std::string id = string_member(n, "id", where);
    std::string kind = string_member(n, "kind", where);
    Node node;
    if (kind == "decision") {
      node = DecisionNode{expr_member(n, "condition", where), string_member(n, "true", where),
                          string_member(n, "false", where)};
    } else if (kind == "process") {
      ProcessNode p;
      const json& assigns = member(n, "assign", where);
      if (!assigns.is_array() || assigns.empty()) schema(where + "/assign", "expected a non-empty array");
      for (std::size_t j = 0; j < assigns.size(); ++j) {
        std::string aw = where + "/assign/" + std::to_string(j);
        Assignment a;
        a.target = identifier_member(assigns[j], "target", aw);
        bool has_expr = assigns[j].contains("expr"), has_slot = assigns[j].contains("slot");
        if (has_expr == has_slot) schema(aw, "exactly one of 'expr' or 'slot' is required");
        if (has_expr)
          a.expr = expr_member(assigns[j], "expr", aw);
        else
          a.slot = string_member(assigns[j], "slot", aw);
        p.assignments.push_back(std::move(a));
      }
      p.next = string_member(n, "next", where);
      node = std::move(p);
    } else if (kind == "terminal") {
      node = TerminalNode{expr_member(n, "value", where)};
    } else {
      schema(where + "/kind", "unknown node kind '" + kind + "'");
    }
    if (!prog.nodes.emplace(id, std::move(node)).second) schema(where + "/id", "duplicate node id '" + id + "'");
  }

  if (doc.contains("placeholders")) {
    const json& ph = doc["placeholders"];
    if (!ph.is_object()) schema("/placeholders", "expected an object");
    for (const auto& [slot, decl] : ph.items()) {
      std::string where = "/placeholders/" + slot;
      Placeholder p;
      p.metric = string_member(decl, "metric", where);
      p.args = string_list(member(decl, "args", where), where + "/args");
      if (p.metric.empty()) schema(where + "/metric", "metric name must be non-empty");
      prog.placeholders.emplace(slot, std::move(p));
    }
  }

  require_valid(prog, allow_placeholders);
  return prog;
}

json program_to_json(const RationalProgram& prog) {
  json doc = json::object();
  doc["version"] = kIrVersion;
  doc["input_vars"] = prog.input_vars;
  doc["output_var"] = prog.output_var;
  doc["entry"] = prog.entry;
  json nodes = json::array();
  for (const auto& id : node_order(prog)) {
    const Node& node = prog.nodes.at(id);
    json n = json::object();
    n["id"] = id;
    if (auto* d = std::get_if<DecisionNode>(&node)) {
      n["kind"] = "decision";
      n["condition"] = to_string(d->condition);
      n["true"] = d->on_true;
      n["false"] = d->on_false;
    } else if (auto* p = std::get_if<ProcessNode>(&node)) {
      n["kind"] = "process";
      json assigns = json::array();
      for (const auto& a : p->assignments) {
        json aj = {{"target", a.target}};
        if (a.slot)
          aj["slot"] = *a.slot;
        else
          aj["expr"] = to_string(a.expr);
        assigns.push_back(std::move(aj));
      }
      n["assign"] = std::move(assigns);
      n["next"] = p->next;
    } else {
      n["kind"] = "terminal";
      n["value"] = to_string(std::get<TerminalNode>(node).value);
    }
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);
  if (!prog.placeholders.empty()) {
    json ph = json::object();
    for (const auto& [slot, decl] : prog.placeholders) ph[slot] = {{"metric", decl.metric}, {"args", decl.args}};
    doc["placeholders"] = std::move(ph);
  }
  return doc;
}

RationalProgram parse_ir(std::string_view text, bool allow_placeholders) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw SchemaError("schema violation at /: empty document");
  return program_from_json(parse_json(text), allow_placeholders);
}

std::string emit_ir(const RationalProgram& prog) { return program_to_json(prog).dump(2) + "\n"; }

namespace {

json terms_to_json(const Polynomial& p) {
  json out = json::array();
  for (const auto& t : p.terms()) out.push_back({{"coeff", to_string(t.coeff)}, {"exponents", t.exponents}});
  return out;
}

Polynomial terms_from_json(const json& v, std::size_t n_vars, const std::string& where) {
  if (!v.is_array()) schema(where, "expected an array of terms");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string tw = where + "/" + std::to_string(i);
    Term t;
    t.coeff = parse_rational(string_member(v[i], "coeff", tw));
    const json& e = member(v[i], "exponents", tw);
    if (!e.is_array() || e.size() != n_vars) schema(tw + "/exponents", "expected " + std::to_string(n_vars) + " exponents");
    for (const auto& x : e) {
      if (!x.is_number_unsigned()) schema(tw + "/exponents", "exponents must be non-negative integers");
      t.exponents.push_back(x.get<unsigned>());
    }
    terms.push_back(std::move(t));
  }
  return Polynomial(n_vars, std::move(terms));
}

}  // namespace

json ratfunc_to_json(const RationalFunction& f, const std::vector<std::string>& vars) {
  return {{"version", "ratprog-ratfunc/1"},
          {"vars", vars},
          {"numerator", terms_to_json(f.numerator())},
          {"denominator", terms_to_json(f.denominator())},
          {"text", f.to_string(vars)},
          {"expr", to_string(f.to_expr(vars))}};
}

RationalFunction ratfunc_from_json(const json& doc) {
  std::string version = string_member(doc, "version", "/");
  if (version != "ratprog-ratfunc/1") schema("/version", "unsupported version '" + version + "'");
  auto vars = string_list(member(doc, "vars", "/"), "/vars");
  Polynomial num = terms_from_json(member(doc, "numerator", "/"), vars.size(), "/numerator");
  Polynomial den = terms_from_json(member(doc, "denominator", "/"), vars.size(), "/denominator");
  if (den.is_zero()) schema("/denominator", "denominator is zero");
  return RationalFunction(std::move(num), std::move(den));
}

}  // namespace ratprog
