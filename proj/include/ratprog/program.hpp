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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ratprog/expr.hpp"
#include "ratprog/ratfunc.hpp"

namespace ratprog {

using NodeId = std::string;

/// One assignment in a process node. Either `expr` is set, or `slot` names a
/// placeholder still waiting for a fitted rational function.
struct Assignment {
  std::string target;
  Expr expr;
  std::optional<std::string> slot;
};

struct DecisionNode {
  Expr condition;
  NodeId on_true;
  NodeId on_false;
};

struct ProcessNode {
  std::vector<Assignment> assignments;
  NodeId next;
};

/// Assigns the program output and stops.
struct TerminalNode {
  Expr value;
};

using Node = std::variant<DecisionNode, ProcessNode, TerminalNode>;

/// Declaration of a placeholder: which metric fills it and which program
/// variables the fitted function is applied to, in order.
struct Placeholder {
  std::string metric;
  std::vector<std::string> args;

  friend bool operator==(const Placeholder&, const Placeholder&) = default;
};

/// Acyclic flowchart of decision, process and terminal nodes over exact
/// rational expressions.
struct RationalProgram {
  std::vector<std::string> input_vars;
  std::string output_var = "Y";
  NodeId entry;
  std::map<NodeId, Node> nodes;
  std::map<std::string, Placeholder> placeholders;
};

enum class DiagnosticKind {
  MissingEntry,
  DanglingEdge,
  Cycle,
  UndefinedVariable,
  UnboundPlaceholder,
  TypeError,
  BadPlaceholder,
  NoTerminal,
};

const char* to_string(DiagnosticKind kind);

struct Diagnostic {
  DiagnosticKind kind;
  NodeId node;
  std::string message;
};

/// Lists every structural problem. Empty iff the program is well formed and
/// has no unbound placeholders.
std::vector<Diagnostic> validate(const RationalProgram& prog);

/// Throws ValidationError unless validate() comes back empty, except for
/// unbound placeholders when `allow_placeholders` is set.
void require_valid(const RationalProgram& prog, bool allow_placeholders = false);

/// Walks the flowchart from the entry. Throws EvalError carrying the node id
/// and the valuation reached so far.
Rational evaluate(const RationalProgram& prog, const Valuation& inputs);

/// Number of terminal nodes.
std::size_t terminal_count(const RationalProgram& prog);

/// Node ids in a deterministic depth-first order from the entry (true edge
/// before false edge), followed by unreachable nodes in id order.
std::vector<NodeId> node_order(const RationalProgram& prog);

/// Replaces every placeholder by the expression form of its function.
/// Bindings must cover exactly the placeholder set.
RationalProgram bind_template(const RationalProgram& prog,
                              const std::map<std::string, RationalFunction>& bindings);

/// Substitutes constants for input variables and drops them from the
/// input list.
RationalProgram specialize(const RationalProgram& prog, const Valuation& constants);

/// One root-to-terminal path with min/max split into explicit branches.
struct Piece {
  std::vector<Expr> predicates;  // conjunction
  Expr value;                    // over the input variables only
};

/// The program as a piecewise rational function. Throws
/// NotPurelyRationalError when floor, ceil, quotient or remainder appear.
std::vector<Piece> piecewise_decomposition(const RationalProgram& prog);

bool piece_holds(const Piece& piece, const Valuation& inputs);

}  // namespace ratprog
