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

#include <functional>
#include <set>

#include "ratprog/errors.hpp"
#include "ratprog/program.hpp"

namespace ratprog {

namespace {

using Branches = std::vector<std::pair<std::vector<Expr>, Expr>>;

bool breaks_rationality(const Expr& e) {
  if (is_integer_part(e.op())) return true;
  if (e.op() == Op::Pow && e.arg(1).op() != Op::Constant) return true;
  for (const auto& a : e.args())
    if (breaks_rationality(a)) return true;
  return false;
}

std::vector<Expr> concat(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  std::vector<Expr> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Rewrites `e` into min/max-free alternatives, each guarded by the
// comparisons that select it. The guards of the alternatives partition the
// input space.
Branches split_minmax(const Expr& e) {
  if (e.op() == Op::Constant || e.op() == Op::Variable) return {{{}, e}};
  if (e.args().size() == 1) {
    Branches out;
    for (auto& [preds, a] : split_minmax(e.arg(0))) out.push_back({preds, Expr::unary(e.op(), a)});
    return out;
  }
  Branches out;
  for (const auto& [pa, a] : split_minmax(e.arg(0))) {
    for (const auto& [pb, b] : split_minmax(e.arg(1))) {
      auto preds = concat(pa, pb);
      if (e.op() == Op::Min || e.op() == Op::Max) {
        Op pick_a = e.op() == Op::Min ? Op::Le : Op::Ge;
        Op pick_b = e.op() == Op::Min ? Op::Gt : Op::Lt;
        out.push_back({concat(preds, {Expr::binary(pick_a, a, b)}), a});
        out.push_back({concat(preds, {Expr::binary(pick_b, a, b)}), b});
      } else {
        out.push_back({preds, Expr::binary(e.op(), a, b)});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Piece> piecewise_decomposition(const RationalProgram& prog) {
  require_valid(prog);

  std::vector<std::string> offending;
  for (const auto& [id, node] : prog.nodes) {
    bool bad = false;
    if (auto* d = std::get_if<DecisionNode>(&node)) {
      bad = breaks_rationality(d->condition);
    } else if (auto* p = std::get_if<ProcessNode>(&node)) {
      for (const auto& a : p->assignments) bad = bad || breaks_rationality(a.expr);
    } else {
      bad = breaks_rationality(std::get<TerminalNode>(node).value);
    }
    if (bad) offending.push_back(id);
  }
  if (!offending.empty()) {
    std::string list;
    for (const auto& id : offending) list += (list.empty() ? "" : ", ") + id;
    throw NotPurelyRationalError("program uses integer-part operations at nodes: " + list, offending);
  }

  std::vector<Piece> pieces;
  using Env = std::map<std::string, Expr>;

  std::function<void(const NodeId&, const Env&, const std::vector<Expr>&)> walk;
  std::function<void(const ProcessNode&, std::size_t, const Env&, const std::vector<Expr>&)> assign;

  walk = [&](const NodeId& id, const Env& env, const std::vector<Expr>& preds) {
    const Node& node = prog.nodes.at(id);
    if (auto* d = std::get_if<DecisionNode>(&node)) {
      for (const auto& [guards, cond] : split_minmax(substitute(d->condition, env))) {
        auto base = concat(preds, guards);
        walk(d->on_true, env, concat(base, {cond}));
        walk(d->on_false, env, concat(base, {Expr::unary(Op::Not, cond)}));
      }
    } else if (auto* p = std::get_if<ProcessNode>(&node)) {
      assign(*p, 0, env, preds);
    } else {
      for (const auto& [guards, value] : split_minmax(substitute(std::get<TerminalNode>(node).value, env)))
        pieces.push_back({concat(preds, guards), value});
    }
  };

  assign = [&](const ProcessNode& p, std::size_t index, const Env& env, const std::vector<Expr>& preds) {
    if (index == p.assignments.size()) {
      walk(p.next, env, preds);
      return;
    }
    const Assignment& a = p.assignments[index];
    for (const auto& [guards, value] : split_minmax(substitute(a.expr, env))) {
      Env next = env;
      next[a.target] = value;
      assign(p, index + 1, next, concat(preds, guards));
    }
  };

  Env start;
  for (const auto& v : prog.input_vars) start.emplace(v, Expr::variable(v));
  walk(prog.entry, start, {});
  return pieces;
}

bool piece_holds(const Piece& piece, const Valuation& inputs) {
  for (const auto& p : piece.predicates)
    if (!evaluate_bool(p, inputs)) return false;
  return true;
}

}  // namespace ratprog
