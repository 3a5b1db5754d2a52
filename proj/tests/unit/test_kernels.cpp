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

#include "ratprog/errors.hpp"
#include "ratprog/expr_parser.hpp"
#include "ratprog/kernels.hpp"
#include "test_support.hpp"

using namespace ratprog;

TEST_CASE("design matrix: parallel equals serial bit for bit") {
  Rng rng(1);
  std::vector<SamplePoint> samples;
  for (int i = 0; i < 3000; ++i)
    samples.push_back({{rng.uniform(1, 100), rng.uniform(1, 100), rng.uniform(1, 8)}, rng.uniform(-5, 5)});
  std::vector<unsigned> nb = {2, 2, 1}, db = {1, 1, 1};
  kernels::ScaledBasis basis{monomial_basis(nb), monomial_basis(db), {100, 100, 8}, 5};
  auto a = kernels::design_matrix_serial(samples, basis);
  auto b = kernels::design_matrix_parallel(samples, basis);
  REQUIRE(a.rows() == 3000);
  REQUIRE(a.cols() == 18 + 8);
  CHECK((a.array() == b.array()).all());
}

TEST_CASE("program evaluation: parallel equals serial") {
  testing::ProgramGenerator gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto prog = gen.make();
    std::vector<Valuation> points;
    for (int k = 0; k < 300; ++k) points.push_back(gen.valuation());
    CHECK(kernels::evaluate_serial(prog, points) == kernels::evaluate_parallel(prog, points));
  }
}

TEST_CASE("program evaluation: the first failure in input order is reported") {
  RationalProgram p;
  p.input_vars = {"x"};
  p.entry = "out";
  p.nodes["out"] = TerminalNode{parse_expression("1/(x - 3) + 1/(x - 7)")};
  std::vector<Valuation> points;
  for (long x = 0; x < 500; ++x) points.push_back({{"x", x}});
  std::string serial, parallel;
  try {
    kernels::evaluate_serial(p, points);
  } catch (const EvalError& e) {
    serial = e.what();
  }
  try {
    kernels::evaluate_parallel(p, points);
  } catch (const EvalError& e) {
    parallel = e.what();
  }
  CHECK_FALSE(serial.empty());
  CHECK(serial == parallel);
}

TEST_CASE("active blocks: parallel equals serial") {
  Rng rng(9);
  DeviceSpec spec;
  std::vector<kernels::OccupancyQuery> q;
  for (int i = 0; i < 50000; ++i)
    q.push_back({{static_cast<std::int64_t>(rng.below(255)), static_cast<std::int64_t>(rng.below(20000))},
                 1 + static_cast<std::int64_t>(rng.below(1100))});
  auto a = kernels::active_blocks_serial(spec, q);
  CHECK(a == kernels::active_blocks_parallel(spec, q));
  for (std::size_t i = 0; i < q.size(); i += 97)
    CHECK(a[i] == testing::min_formula_blocks(spec, q[i].usage, q[i].threads));
}
