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

#include <cmath>

#include "ratprog/errors.hpp"
#include "ratprog/expr_parser.hpp"
#include "ratprog/profile.hpp"

using namespace ratprog;

namespace {

std::size_t error_line(std::string_view csv) {
  try {
    load_profile(csv);
  } catch (const ParseError& e) {
    std::string w = e.what();
    auto pos = w.find("line ");
    REQUIRE(pos != std::string::npos);
    return std::stoul(w.substr(pos + 5));
  }
  FAIL("expected a parse error");
  return 0;
}

}  // namespace

TEST_CASE("load_profile examples") {
  auto one = load_profile("metric,N,bx,value\nE,32,32,1.5\nE,64,32,3\n");
  CHECK(one.metrics.size() == 1);
  CHECK(one.samples("E").size() == 2);
  CHECK(one.var_names == std::vector<std::string>{"N", "bx"});
  CHECK(one.samples("E")[0].value == 1.5);

  auto two = load_profile("metric,N,value\nmem,1,10\ncomp,1,20\nmem,2,11\ncomp,2,21\n");
  CHECK(two.metric_order == std::vector<std::string>{"mem", "comp"});
  CHECK(two.samples("mem")[1].inputs == std::vector<double>{2});
  CHECK(two.samples("comp")[0].value == 20);

  CHECK(error_line("metric,N,bx,value\nE,1,2,3\nE,1,2\n") == 3);
}

TEST_CASE("load_profile errors") {
  CHECK(error_line("") == 1);
  CHECK(error_line("N,bx,value\n") == 1);
  CHECK(error_line("metric,N,value\n# comment\nE,abc,1\n") == 3);
  CHECK(error_line("metric,N,value\nE,1,\n") == 2);
  CHECK(error_line("metric,N,value\n,1,2\n") == 2);
  CHECK_THROWS_AS(load_profile("metric,N,value\nE,1,2\n").samples("F"), MissingMetricError);
}

TEST_CASE("csv round trip") {
  auto d = load_profile("metric,N,value\nE,1,0.1\nE,3,2.5e-7\nF,2,-4\n");
  auto back = load_profile(to_csv(d));
  CHECK(back.metric_order == d.metric_order);
  CHECK(back.samples("E")[0].value == d.samples("E")[0].value);
  CHECK(back.samples("E")[1].value == d.samples("E")[1].value);
  CHECK(to_csv(back) == to_csv(d));
}

TEST_CASE("simulate_profile") {
  std::vector<std::string> vars = {"N", "bx"};
  auto model = analytic_from_expr(parse_arithmetic("N*N/bx + 3"), vars);
  std::vector<std::vector<double>> grid = {{32, 32}, {64, 32}, {64, 64}};
  auto exact = simulate_profile({{"E", model}}, vars, grid, 0, 1);
  CHECK(exact.samples("E")[1].value == 64.0 * 64 / 32 + 3);

  auto a = simulate_profile({{"E", model}}, vars, grid, 0.05, 9);
  auto b = simulate_profile({{"E", model}}, vars, grid, 0.05, 9);
  CHECK(to_csv(a) == to_csv(b));
  auto c = simulate_profile({{"E", model}}, vars, grid, 0.05, 10);
  CHECK(to_csv(a) != to_csv(c));
}

TEST_CASE("simulated noise has the requested spread") {
  std::vector<std::string> vars = {"x"};
  auto model = analytic_from_expr(parse_arithmetic("x + 1"), vars);
  std::vector<std::vector<double>> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back({static_cast<double>(i)});
  auto d = simulate_profile({{"m", model}}, vars, grid, 0.01, 42);
  double sum = 0, sum_sq = 0;
  for (const auto& s : d.samples("m")) {
    double eps = s.value / (s.inputs[0] + 1) - 1;
    sum += eps;
    sum_sq += eps * eps;
  }
  double mean = sum / 1000;
  double sd = std::sqrt(sum_sq / 1000 - mean * mean);
  CHECK(sd >= 0.008);
  CHECK(sd <= 0.012);
}

TEST_CASE("analytic models reject unknown variables") {
  std::vector<std::string> vars = {"N"};
  CHECK_THROWS_AS(analytic_from_expr(parse_arithmetic("N + bq"), vars), Error);
}

TEST_CASE("scale_values") {
  auto d = load_profile("metric,N,value\nE,1,2\n");
  CHECK(scale_values(d, 7).samples("E")[0].value == 14);
}
