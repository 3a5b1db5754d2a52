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

#include "ratprog/program.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ratprog/errors.hpp"

namespace ratprog {

const char* to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::MissingEntry: return "missing entry";
    case DiagnosticKind::DanglingEdge: return "dangling edge";
    case DiagnosticKind::Cycle: return "cycle";
    case DiagnosticKind::UndefinedVariable: return "undefined variable";
    case DiagnosticKind::UnboundPlaceholder: return "unbound placeholder";
    case DiagnosticKind::TypeError: return "type error";
    case DiagnosticKind::BadPlaceholder: return "bad placeholder";
    case DiagnosticKind::NoTerminal: return "no terminal";
  }
  return "?";
}

namespace {

std::vector<NodeId> successors(const Node& node) {
  if (auto* d = std::get_if<DecisionNode>(&node)) return {d->on_true, d->on_false};
  if (auto* p = std::get_if<ProcessNode>(&node)) return {p->next};
  return {};
}

std::set<std::string> reads_of(const Assignment& a, const RationalProgram& prog) {
  if (a.slot) {
    auto it = prog.placeholders.find(*a.slot);
    if (it == prog.placeholders.end()) return {};
    return {it->second.args.begin(), it->second.args.end()};
  }
  return a.expr.valid() ? free_variables(a.expr) : std::set<std::string>{};
}

std::string render_valuation(const Valuation& env) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : env) {
    if (!first) out += ", ";
    first = false;
    out += name + "=" + to_string(value);
  }
  return out + "}";
}

}  // namespace

std::vector<Diagnostic> validate(const RationalProgram& prog) {
  std::vector<Diagnostic> diags;
  auto report = [&](DiagnosticKind kind, const NodeId& node, std::string msg) {
    diags.push_back({kind, node, std::move(msg)});
  };

  if (!prog.nodes.count(prog.entry)) {
    report(DiagnosticKind::MissingEntry, prog.entry, "entry node '" + prog.entry + "' does not exist");
    return diags;
  }

  bool dangling = false;
  std::size_t terminals = 0;
  std::map<std::string, int> slot_uses;
  for (const auto& [id, node] : prog.nodes) {
    for (const auto& succ : successors(node)) {
      if (!prog.nodes.count(succ)) {
        report(DiagnosticKind::DanglingEdge, id, "edge to missing node '" + succ + "'");
        dangling = true;
      }
    }
    if (auto* d = std::get_if<DecisionNode>(&node)) {
      if (!d->condition.valid() || !d->condition.is_boolean())
        report(DiagnosticKind::TypeError, id, "decision condition is not a boolean expression");
    } else if (auto* p = std::get_if<ProcessNode>(&node)) {
      for (const auto& a : p->assignments) {
        if (a.slot) {
          ++slot_uses[*a.slot];
          if (!prog.placeholders.count(*a.slot))
            report(DiagnosticKind::BadPlaceholder, id, "assignment uses undeclared slot '" + *a.slot + "'");
          else
            report(DiagnosticKind::UnboundPlaceholder, id,
                   "slot '" + *a.slot + "' for '" + a.target + "' is not bound");
        } else if (!a.expr.valid() || a.expr.is_boolean()) {
          report(DiagnosticKind::TypeError, id,
                 "assignment to '" + a.target + "' is not an arithmetic expression");
        }
      }
    } else {
      ++terminals;
      auto& t = std::get<TerminalNode>(node);
      if (!t.value.valid() || t.value.is_boolean())
        report(DiagnosticKind::TypeError, id, "terminal value is not an arithmetic expression");
    }
  }
  for (const auto& [slot, decl] : prog.placeholders) {
    int uses = slot_uses.count(slot) ? slot_uses[slot] : 0;
    if (uses != 1)
      report(DiagnosticKind::BadPlaceholder, "",
             "placeholder '" + slot + "' is used " + std::to_string(uses) + " times, expected once");
  }
  if (terminals == 0) report(DiagnosticKind::NoTerminal, "", "program has no terminal node");
  if (dangling) return diags;

  // Cycle detection over the whole graph.
  enum Color { White, Grey, Black };
  std::map<NodeId, Color> color;
  for (const auto& [id, node] : prog.nodes) color[id] = White;
  bool cyclic = false;
  std::function<void(const NodeId&)> visit = [&](const NodeId& id) {
    color[id] = Grey;
    for (const auto& succ : successors(prog.nodes.at(id))) {
      if (color[succ] == Grey) {
        report(DiagnosticKind::Cycle, id, "edge to '" + succ + "' closes a cycle");
        cyclic = true;
      } else if (color[succ] == White) {
        visit(succ);
      }
    }
    color[id] = Black;
  };
  if (color[prog.entry] == White) visit(prog.entry);
  for (const auto& [id, node] : prog.nodes)
    if (color[id] == White) visit(id);
  if (cyclic) return diags;

  // Definite-assignment analysis along every path from the entry, in
  // topological order of the reachable subgraph.
  std::vector<NodeId> order;
  std::set<NodeId> seen;
  std::function<void(const NodeId&)> post = [&](const NodeId& id) {
    if (!seen.insert(id).second) return;
    for (const auto& succ : successors(prog.nodes.at(id))) post(succ);
    order.push_back(id);
  };
  post(prog.entry);
  std::reverse(order.begin(), order.end());

  std::map<NodeId, std::set<std::string>> defined_in;
  defined_in[prog.entry] = {prog.input_vars.begin(), prog.input_vars.end()};
  std::map<NodeId, bool> has_in;
  has_in[prog.entry] = true;
  for (const auto& id : order) {
    std::set<std::string> defined = defined_in[id];
    auto check = [&](const std::set<std::string>& reads) {
      for (const auto& v : reads)
        if (!defined.count(v))
          report(DiagnosticKind::UndefinedVariable, id, "variable '" + v + "' may be read before assignment");
    };
    const Node& node = prog.nodes.at(id);
    if (auto* d = std::get_if<DecisionNode>(&node)) {
      if (d->condition.valid()) check(free_variables(d->condition));
    } else if (auto* p = std::get_if<ProcessNode>(&node)) {
      for (const auto& a : p->assignments) {
        check(reads_of(a, prog));
        defined.insert(a.target);
      }
    } else {
      const auto& t = std::get<TerminalNode>(node);
      if (t.value.valid()) check(free_variables(t.value));
    }
    for (const auto& succ : successors(node)) {
      if (!has_in[succ]) {
        defined_in[succ] = defined;
        has_in[succ] = true;
      } else {
        std::set<std::string> both;
        std::set_intersection(defined_in[succ].begin(), defined_in[succ].end(), defined.begin(),
                              defined.end(), std::inserter(both, both.begin()));
        defined_in[succ] = std::move(both);
      }
    }
  }
  return diags;
}

void require_valid(const RationalProgram& prog, bool allow_placeholders) {
  std::vector<std::string> details;
  for (const auto& d : validate(prog)) {
    if (allow_placeholders && d.kind == DiagnosticKind::UnboundPlaceholder) continue;
    details.push_back(std::string(to_string(d.kind)) + (d.node.empty() ? "" : " at node '" + d.node + "'") +
                      ": " + d.message);
  }
  if (!details.empty()) {
    std::string msg = "invalid program: " + details.front();
    if (details.size() > 1) msg += " (and " + std::to_string(details.size() - 1) + " more)";
    throw ValidationError(msg, details);
  }
}

Rational evaluate(const RationalProgram& prog, const Valuation& inputs) {
  Valuation env;
  for (const auto& name : prog.input_vars) {
    auto it = inputs.find(name);
    if (it == inputs.end()) throw EvalError("missing value for input '" + name + "'");
    env.emplace(name, it->second);
  }
  NodeId current = prog.entry;
  // An acyclic program visits each node at most once.
  for (std::size_t steps = 0; steps <= prog.nodes.size(); ++steps) {
    auto it = prog.nodes.find(current);
    if (it == prog.nodes.end()) throw EvalError("jump to missing node '" + current + "'");
    try {
      if (auto* d = std::get_if<DecisionNode>(&it->second)) {
        current = evaluate_bool(d->condition, env) ? d->on_true : d->on_false;
      } else if (auto* p = std::get_if<ProcessNode>(&it->second)) {
        for (const auto& a : p->assignments) {
          if (a.slot) throw BindingError("slot '" + *a.slot + "' is not bound");
          env[a.target] = evaluate_number(a.expr, env);
        }
        current = p->next;
      } else {
        return evaluate_number(std::get<TerminalNode>(it->second).value, env);
      }
    } catch (const EvalError& e) {
      throw EvalError("at node '" + current + "': " + e.what() + " with " + render_valuation(env));
    }
  }
  throw EvalError("program did not terminate (cycle through '" + current + "')");
}

std::size_t terminal_count(const RationalProgram& prog) {
  return static_cast<std::size_t>(std::count_if(prog.nodes.begin(), prog.nodes.end(), [](const auto& kv) {
    return std::holds_alternative<TerminalNode>(kv.second);
  }));
}

std::vector<NodeId> node_order(const RationalProgram& prog) {
  std::vector<NodeId> order;
  std::set<NodeId> seen;
  std::vector<NodeId> stack;
  if (prog.nodes.count(prog.entry)) stack.push_back(prog.entry);
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    order.push_back(id);
    auto succ = successors(prog.nodes.at(id));
    for (auto it = succ.rbegin(); it != succ.rend(); ++it)
      if (prog.nodes.count(*it) && !seen.count(*it)) stack.push_back(*it);
  }
  for (const auto& [id, node] : prog.nodes)
    if (!seen.count(id)) order.push_back(id);
  return order;
}

RationalProgram bind_template(const RationalProgram& prog,
                              const std::map<std::string, RationalFunction>& bindings) {
  for (const auto& [slot, decl] : prog.placeholders)
    if (!bindings.count(slot)) throw BindingError("missing binding for slot '" + slot + "'");
  for (const auto& [slot, f] : bindings)
    if (!prog.placeholders.count(slot)) throw BindingError("no placeholder named '" + slot + "'");

  RationalProgram out = prog;
  for (auto& [id, node] : out.nodes) {
    auto* p = std::get_if<ProcessNode>(&node);
    if (!p) continue;
    for (auto& a : p->assignments) {
      if (!a.slot) continue;
      const Placeholder& decl = prog.placeholders.at(*a.slot);
      const RationalFunction& f = bindings.at(*a.slot);
      if (f.n_vars() != decl.args.size())
        throw BindingError("slot '" + *a.slot + "' takes " + std::to_string(decl.args.size()) +
                           " arguments but its function has " + std::to_string(f.n_vars()) + " variables");
      a.expr = f.to_expr(decl.args);
      a.slot.reset();
    }
  }
  out.placeholders.clear();
  return out;
}

RationalProgram specialize(const RationalProgram& prog, const Valuation& constants) {
  std::map<std::string, Expr> replacements;
  for (const auto& [name, value] : constants) replacements.emplace(name, Expr::constant(value));
  RationalProgram out = prog;
  std::erase_if(out.input_vars, [&](const std::string& v) { return constants.count(v) > 0; });
  for (auto& [id, node] : out.nodes) {
    if (auto* d = std::get_if<DecisionNode>(&node)) {
      d->condition = substitute(d->condition, replacements);
    } else if (auto* p = std::get_if<ProcessNode>(&node)) {
      for (auto& a : p->assignments)
        if (a.expr.valid()) a.expr = substitute(a.expr, replacements);
    } else {
      auto& t = std::get<TerminalNode>(node);
      t.value = substitute(t.value, replacements);
    }
  }
  return out;
}

}  // namespace ratprog
