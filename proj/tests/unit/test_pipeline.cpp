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

#include "ratprog/errors.hpp"
#include "ratprog/expr_parser.hpp"
#include "ratprog/ir.hpp"
#include "ratprog/pipeline.hpp"
#include "scenario.hpp"
#include "test_support.hpp"

using namespace ratprog;
using namespace ratprog::pipeline;

namespace {

DriverProgram hand_driver(const std::string& cost, int dim = 2, std::vector<std::string> constraints = {}) {
  DriverProgram d;
  d.program.input_vars = {"N", "bx", "by"};
  d.program.entry = "out";
  d.program.nodes["out"] = TerminalNode{parse_arithmetic(cost)};
  d.policy.dimensionality = dim;
  for (const auto& c : constraints) d.constraints.block_constraints.push_back(parse_condition(c));
  d.constraints.grid_formulas[0] = parse_arithmetic("ceil(N/bx)");
  d.constraints.grid_formulas[1] = parse_arithmetic("ceil(N/by)");
  return d;
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Same order and tie rule as the selector, written out directly.
BlockDims brute_force_choice(const SelectionReport& r) {
  Rational best = r.table.front().predicted;
  for (const auto& row : r.table) best = std::min(best, row.predicted);
  const ConfigRow* pick = nullptr;
  for (const auto& row : r.table) {
    if (abs(row.predicted - best) > best * kDefaultTieMargin) continue;
    if (!pick || row.occupancy > pick->occupancy ||
        (row.occupancy == pick->occupancy &&
         (row.block.bx > pick->block.bx ||
          (row.block.bx == pick->block.bx &&
           (row.block.by < pick->block.by || (row.block.by == pick->block.by && row.block.bz < pick->block.bz))))))
      pick = &row;
  }
  return pick->block;
}

}  // namespace

TEST_CASE("shipped templates load") {
  auto single = template_from_json(parse_json(read(std::string(RATPROG_DATA_DIR) + "/templates/single_metric.json")));
  CHECK(single.metric_slots == std::map<std::string, std::string>{{"E", "E"}});
  auto mwp = template_from_json(parse_json(read(std::string(RATPROG_DATA_DIR) + "/templates/mwp_cwp.json")));
  CHECK(mwp.metric_slots.size() == 2);
  CHECK(mwp.device_attributes.size() == 4);
}

TEST_CASE("template with no placeholders folds device constants") {
  RationalProgram p;
  p.input_vars = {"N", "bx", "w_max", "sm_count"};
  p.entry = "out";
  p.nodes["out"] = TerminalNode{parse_arithmetic("N/bx + w_max*sm_count")};
  auto tmpl = make_template(p, {"sm_count"});
  DeviceSpec device;
  device.extras["sm_count"] = 80;
  BuildOptions opts;
  opts.policy.dimensionality = 1;
  auto build = build_driver(tmpl, ProfileDataset{}, device, opts);
  CHECK(build.driver.program.input_vars == std::vector<std::string>{"N", "bx"});
  CHECK(evaluate(build.driver.program, {{"N", 64}, {"bx", 32}}) == 2 + 64 * 80);
  CHECK(evaluate(build.driver.program, {{"N", 64}, {"bx", 32}}) ==
        evaluate(p, {{"N", 64}, {"bx", 32}, {"w_max", 64}, {"sm_count", 80}}));
}

TEST_CASE("driver equals the hand-composed model") {
  // Template Y = 2*E + N with E fitted from a known function.
  const char* doc = R"({
    "version": "ratprog-ir/1", "input_vars": ["N", "bx", "by"], "output_var": "Y", "entry": "fit",
    "nodes": [
      {"id": "fit", "kind": "process", "assign": [{"target": "E", "slot": "s"}], "next": "out"},
      {"id": "out", "kind": "terminal", "value": "2*E + N"}
    ],
    "placeholders": {"s": {"metric": "E", "args": ["N", "bx", "by"]}}
  })";
  auto tmpl = template_from_json(parse_json(doc));
  auto data = testing::cost_profile(0, 0, "(N*N + bx)/(bx*by + 1)");
  auto opts = testing::cost_build_options();
  opts.bounds["E"] = DegreeBounds{{2, 1, 0}, {0, 1, 1}};
  auto build = build_driver(tmpl, data, DeviceSpec{}, opts);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Rational n(static_cast<long>(1 + rng.below(4096))), bx(static_cast<long>(1 + rng.below(1024))),
        by(static_cast<long>(1 + rng.below(8)));
    Rational want = 2 * (n * n + bx) / (bx * by + 1) + n;
    Rational got = evaluate(build.driver.program, {{"N", n}, {"bx", bx}, {"by", by}});
    CHECK(abs(got / want - 1) < Rational(1, 1000000));
  }
}

TEST_CASE("missing inputs are reported") {
  auto data = load_profile("metric,N,bx,by,value\nF,1,1,1,1\n");
  CHECK_THROWS_WITH_AS(build_driver(testing::single_metric_template(), data, DeviceSpec{}),
                       doctest::Contains("'E'"), MissingMetricError);

  RationalProgram p;
  p.input_vars = {"N", "sm_count"};
  p.entry = "out";
  p.nodes["out"] = TerminalNode{parse_arithmetic("N*sm_count")};
  CHECK_THROWS_WITH_AS(build_driver(make_template(p, {"sm_count"}), {}, DeviceSpec{}), doctest::Contains("sm_count"),
                       MissingMetricError);

  auto wrong_vars = load_profile("metric,N,bx,value\nE,1,1,1\n");
  CHECK_THROWS_AS(build_driver(testing::single_metric_template(), wrong_vars, DeviceSpec{}), DimensionError);
}

TEST_CASE("fit failures carry the metric name") {
  auto data = load_profile(
      "metric,N,bx,by,value\nE,1,1,1,1\nE,1,1,1,2\nE,1,1,1,3\nE,2,1,1,5\nE,2,1,1,6\nE,2,1,1,7\n");
  BuildOptions opts;
  opts.bounds["E"] = DegreeBounds{{2, 0, 0}, {0, 0, 0}};
  CHECK_THROWS_WITH_AS(build_driver(testing::single_metric_template(), data, DeviceSpec{}, opts),
                       doctest::Contains("'E'"), DegenerateDenominatorError);
}

TEST_CASE("select_config examples") {
  auto driver = hand_driver("N*N/(bx*by)");
  HistoryCache cache;
  auto first = select_config(driver, 64, &cache);
  CHECK(first.chosen.block == BlockDims{1024, 1, 1});
  CHECK(first.chosen.grid == GridDims{1, 64, 1});
  CHECK(first.source == Source::Fresh);
  CHECK(first.ties == 10);
  CHECK(first.table.size() == 51);

  auto second = select_config(driver, 64, &cache);
  CHECK(second.source == Source::Cache);
  CHECK(second.chosen == first.chosen);
  CHECK(second.predicted == first.predicted);

  auto single = select_config(hand_driver("N*N/(bx*by)", 1, {"bx*by <= 32"}), 64);
  CHECK(single.table.size() == 1);
  CHECK(single.chosen.block == BlockDims{32, 1, 1});
}

TEST_CASE("selection errors") {
  CHECK_THROWS_AS(select_config(hand_driver("N", 2, {"bx > 2048"}), 64), NoFeasibleConfigError);
  CHECK_THROWS_AS(select_config(hand_driver("N/(bx - 32)", 1), 64), EvalError);
  CHECK_THROWS_AS(select_config(hand_driver("N", 1), 0), DomainError);
}

TEST_CASE("maximizing objective and tie margin") {
  auto driver = hand_driver("bx + by");
  driver.objective = Objective::Maximize;
  auto r = select_config(driver, 10);
  CHECK(r.chosen.block == BlockDims{1024, 1, 1});

  std::vector<ConfigRow> rows = {{{32, 1, 1}, Rational(100), 1}, {{64, 1, 1}, Rational(101), 1}};
  CHECK(preferred_row(rows, Objective::Minimize, kDefaultTieMargin) == 0);
  std::size_t ties = 0;
  CHECK(preferred_row(rows, Objective::Minimize, Rational(1, 50), &ties) == 1);
  CHECK(ties == 1);
}

TEST_CASE("chosen row is the argmin of its own table") {
  Rng rng(4);
  const char* costs[] = {"N*N/(bx*by) + 16*bx", "bx + by", "N/bx + by*by", "(N + bx)/(by + 1)", "7"};
  for (const char* cost : costs)
    for (std::int64_t n : {1, 64, 1000}) {
      auto r = select_config(hand_driver(cost), n);
      CHECK(r.chosen.block == brute_force_choice(r));
      for (const auto& row : r.table) CHECK(r.predicted <= row.predicted);
    }
}

TEST_CASE("positive scaling leaves the choice unchanged") {
  for (const char* cost : {"N*N/(bx*by) + 16*bx", "N/bx + by*by", "(N + bx)/(by + 1)"}) {
    for (std::int64_t n : {32, 100, 2048}) {
      auto base = select_config(hand_driver(cost), n);
      for (const char* c : {"7", "1/3", "1000"}) {
        auto scaled = select_config(hand_driver(std::string(c) + "*(" + cost + ")"), n);
        CHECK(scaled.chosen == base.chosen);
      }
    }
  }
}

TEST_CASE("compare_exhaustive examples") {
  auto data = testing::cost_profile(0, 0);
  auto driver = testing::cost_driver(data);
  auto oracle = testing::expr_oracle(testing::kCostModel);
  for (std::int64_t n : {64, 512, 1024, 2048, 4096}) {
    auto c = compare_exhaustive(driver, oracle, n);
    CHECK(c.regret == 1);
  }
  CHECK(compare_exhaustive(driver, testing::expr_oracle("5"), 1024).regret == 1);

  // A linear-in-bx model cannot see the 1/bx term.
  BuildOptions weak = testing::cost_build_options();
  weak.bounds["E"] = DegreeBounds{{0, 1, 0}, {0, 0, 0}};
  auto misfit = build_driver(testing::single_metric_template(), data, DeviceSpec{}, weak).driver;
  auto c = compare_exhaustive(misfit, oracle, 1024);
  CHECK(c.regret >= 1);
  CHECK(c.regret > 1);

  CHECK_THROWS_AS(compare_exhaustive(driver, testing::expr_oracle("bx - 64"), 1024), DomainError);
}

TEST_CASE("extrapolation beyond the training sizes") {
  auto driver = testing::cost_driver(testing::cost_profile(0, 0));
  auto a = select_config(driver, 1024);
  auto b = select_config(driver, 2048);
  CHECK(a.chosen.block == BlockDims{128, 4, 1});
  CHECK(b.chosen.block == BlockDims{256, 4, 1});
  CHECK(a.chosen.grid == GridDims{8, 256, 1});
}

TEST_CASE("driver documents round trip") {
  auto driver = testing::cost_driver(testing::cost_profile(0, 0));
  auto doc = driver_to_json(driver);
  auto back = driver_from_json(doc);
  CHECK(driver_to_json(back) == doc);
  for (std::int64_t n : {256, 1024, 3000}) CHECK(select_config(back, n).chosen == select_config(driver, n).chosen);
  doc["driver"]["config_space"]["dim"] = 5;
  CHECK_THROWS_AS(driver_from_json(doc), Error);
  CHECK_THROWS_AS(driver_from_json(program_to_json(driver.program)), SchemaError);
}

TEST_CASE("cache documents are deterministic") {
  auto run = [] {
    auto driver = testing::cost_driver(testing::cost_profile(0.01, 5));
    HistoryCache cache;
    for (std::int64_t n : {1024, 64, 2048, 1024}) select_config(driver, n, &cache);
    return cache.persist();
  };
  CHECK(run() == run());
}

TEST_CASE("mwp-cwp template builds and selects") {
  auto tmpl = template_from_json(parse_json(read(std::string(RATPROG_DATA_DIR) + "/templates/mwp_cwp.json")));
  auto device = device_from_json(parse_json(read(std::string(RATPROG_DATA_DIR) + "/devices/reference.json")));
  std::vector<std::string> vars = {"N", "bx", "by"};
  std::vector<std::vector<double>> grid;
  for (double n = 32; n <= 512; n *= 2)
    for (double bx = 1; bx <= 256; bx *= 2)
      for (double by = 1; by <= 8; by *= 2) grid.push_back({n, bx, by});
  auto data = simulate_profile({{"mem_insts", analytic_from_expr(parse_arithmetic("N*N/(bx*by) + 4"), vars)},
                                {"comp_insts", analytic_from_expr(parse_arithmetic("3*N + bx"), vars)}},
                               vars, grid, 0, 0);
  BuildOptions opts;
  opts.policy.dimensionality = 2;
  opts.bounds["mem_insts"] = DegreeBounds{{2, 0, 1}, {0, 1, 1}};
  opts.bounds["comp_insts"] = DegreeBounds{{1, 1, 0}, {0, 0, 0}};
  auto build = build_driver(tmpl, data, device, opts);
  CHECK(build.driver.program.input_vars == vars);
  auto r = select_config(build.driver, 1024);
  CHECK(r.table.size() == 51);
  CHECK(r.chosen.block == brute_force_choice(r));
}
