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

#include "ratprog/program.hpp"

namespace ratprog {

/// Emits a C99 translation unit defining
/// `double <function_name>(double <input>...)`. Each flowchart node becomes
/// one labelled block, so there is exactly one `return` per terminal node.
/// Output depends only on the program.
std::string emit_c_source(const RationalProgram& prog, const std::string& function_name);

}  // namespace ratprog
