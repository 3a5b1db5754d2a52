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

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ratprog/codegen.hpp"
#include "ratprog/errors.hpp"
#include "ratprog/expr_parser.hpp"
#include "ratprog/ir.hpp"
#include "ratprog/occupancy.hpp"
#include "ratprog/program.hpp"

using namespace ratprog;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(RATPROG_GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

RationalProgram add_one() {
  RationalProgram p;
  p.input_vars = {"X1"};
  p.entry = "out";
  p.nodes["out"] = TerminalNode{parse_expression("X1 + 1")};
  return p;
}

}  // namespace

TEST_CASE("straight-line program matches its golden file") {
  std::string src = emit_c_source(add_one(), "add_one");
  CHECK(count(src, "return ") == 1);
  CHECK(src == golden("add_one.c"));
}

TEST_CASE("occupancy program matches its golden file") {
  std::string src = emit_c_source(occupancy::build_occupancy_program(), "occupancy");
  CHECK(count(src, "return ") == 5);
  CHECK(src == golden("occupancy.c"));
}

TEST_CASE("emission is deterministic") {
  auto occ = occupancy::build_occupancy_program();
  CHECK(emit_c_source(occ, "f") == emit_c_source(occ, "f"));
  CHECK(emit_c_source(parse_ir(emit_ir(occ)), "f") == emit_c_source(occ, "f"));
}

TEST_CASE("only math.h is included") {
  std::string src = emit_c_source(occupancy::build_occupancy_program(), "f");
  CHECK(count(src, "#include") == 1);
  CHECK(count(src, "#include <math.h>") == 1);
}

TEST_CASE("unbound placeholders are rejected") {
  RationalProgram p;
  p.input_vars = {"x"};
  p.entry = "fit";
  p.nodes["fit"] = ProcessNode{{{"L", Expr(), std::string("L1")}}, "out"};
  p.nodes["out"] = TerminalNode{parse_expression("L")};
  p.placeholders["L1"] = Placeholder{"m", {"x"}};
  CHECK_THROWS_WITH_AS(emit_c_source(p, "f"), doctest::Contains("L1"), BindingError);
}

TEST_CASE("bad function names are rejected") {
  CHECK_THROWS_AS(emit_c_source(add_one(), "3d"), InputError);
  CHECK_THROWS_AS(emit_c_source(add_one(), "return"), InputError);
}
