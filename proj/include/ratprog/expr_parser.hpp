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

#include <string_view>

#include "ratprog/expr.hpp"

namespace ratprog {

/// Parses one expression of the constraint language:
///
///   or_expr  := and_expr ('or' and_expr)*
///   and_expr := cmp ('and' cmp)*
///   cmp      := sum (('<'|'<='|'=='|'>='|'>') sum)?
///   sum      := term (('+'|'-') term)*
///   term     := unary (('*'|'/') unary)*
///   unary    := '-' unary | power
///   power    := not_expr ('**' unary)?
///   not_expr := 'not' not_expr | primary
///   primary  := integer | identifier | call | '(' or_expr ')'
///   call     := ('floor'|'ceil') '(' e ')' | ('min'|'max'|'quo'|'rem') '(' e ',' e ')'
///
/// `**` is right-associative and `/` is exact rational division. Operands
/// are type-checked: arithmetic operators take numbers, `and`/`or`/`not`
/// take booleans. Errors carry the byte offset of the offending token.
/// Unknown identifiers are accepted here and reported at evaluation.
Expr parse_expression(std::string_view text);

/// Parses and requires a boolean result.
Expr parse_condition(std::string_view text);

/// Parses and requires an arithmetic result.
Expr parse_arithmetic(std::string_view text);

}  // namespace ratprog
