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

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ratprog/program.hpp"

namespace ratprog {

inline constexpr const char* kIrVersion = "ratprog-ir/1";

/// Program documents are JSON objects:
///
///   { "version": "ratprog-ir/1", "input_vars": [...], "output_var": "Y",
///     "entry": "<id>", "nodes": [ <node>... ],
///     "placeholders": { "<slot>": {"metric": "...", "args": [...]} } }
///
/// with nodes
///
///   {"id": .., "kind": "decision", "condition": "<expr>", "true": id, "false": id}
///   {"id": .., "kind": "process", "assign": [{"target": v, "expr": "<expr>"} |
///                                            {"target": v, "slot": s}], "next": id}
///   {"id": .., "kind": "terminal", "value": "<expr>"}
///
/// Unknown top-level keys are preserved by callers that need them
/// (drivers and templates add their own sections).
RationalProgram program_from_json(const nlohmann::json& doc, bool allow_placeholders = false);
nlohmann::json program_to_json(const RationalProgram& prog);

RationalProgram parse_ir(std::string_view text, bool allow_placeholders = false);
std::string emit_ir(const RationalProgram& prog);

/// Parses a JSON document, rethrowing syntax errors as ParseError with the
/// byte offset.
nlohmann::json parse_json(std::string_view text);

/// Stand-alone rational function fragment as written by `ratprog fit`.
nlohmann::json ratfunc_to_json(const RationalFunction& f, const std::vector<std::string>& vars);
RationalFunction ratfunc_from_json(const nlohmann::json& doc);

}  // namespace ratprog
