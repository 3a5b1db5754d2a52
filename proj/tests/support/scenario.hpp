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

#include <cstdint>
#include <string>
#include <vector>

#include "ratprog/expr_parser.hpp"
#include "ratprog/ir.hpp"
#include "ratprog/pipeline.hpp"

namespace ratprog::testing {

// Cost model with an interior optimum once by is capped at 4:
// at fixed by the minimum over bx sits at bx = N / sqrt(16 by).
inline constexpr const char* kCostModel = "N*N/(bx*by) + 16*bx";
inline constexpr const char* kCostConstraint = "by <= 4";

inline ModelTemplate single_metric_template() {
  const char* doc = R"({
    "version": "ratprog-ir/1",
    "input_vars": ["N", "bx", "by"],
    "output_var": "Y",
    "entry": "cost",
    "nodes": [
      {"id": "cost", "kind": "process", "assign": [{"target": "T", "slot": "E"}], "next": "done"},
      {"id": "done", "kind": "terminal", "value": "T"}
    ],
    "placeholders": {"E": {"metric": "E", "args": ["N", "bx", "by"]}}
  })";
  return template_from_json(parse_json(doc));
}

inline ConstraintSet cost_constraints() {
  ConstraintSet c;
  c.block_constraints.push_back(parse_condition(kCostConstraint));
  c.grid_formulas[0] = parse_arithmetic("ceil(N/bx)");
  c.grid_formulas[1] = parse_arithmetic("ceil(N/by)");
  return c;
}

inline EnumerationPolicy cost_policy() {
  EnumerationPolicy p;
  p.dimensionality = 2;
  return p;
}

// Training points: N in 32..512 (powers of two) crossed with every
// launchable (bx, by); the by cap applies to selection only.
inline ProfileDataset cost_profile(double sigma, std::uint64_t seed, const char* model = kCostModel) {
  std::vector<std::string> vars = {"N", "bx", "by"};
  std::vector<std::vector<double>> grid;
  DeviceSpec device;
  for (std::int64_t n = 32; n <= 512; n *= 2)
    for (const auto& b : configspace::enumerate_block_configs(cost_policy(), device, {}, n))
      grid.push_back({static_cast<double>(n), static_cast<double>(b.bx), static_cast<double>(b.by)});
  auto f = analytic_from_expr(parse_arithmetic(model), vars);
  return simulate_profile({{"E", f}}, vars, grid, sigma, seed);
}

inline BuildOptions cost_build_options() {
  BuildOptions o;
  o.bounds["E"] = DegreeBounds{{2, 2, 1}, {0, 1, 1}};
  o.policy = cost_policy();
  o.constraints = cost_constraints();
  return o;
}

inline DriverProgram cost_driver(const ProfileDataset& data) {
  return build_driver(single_metric_template(), data, DeviceSpec{}, cost_build_options()).driver;
}

inline pipeline::CostOracle expr_oracle(const std::string& text) {
  Expr e = parse_arithmetic(text);
  return [e](const Valuation& v) { return evaluate_number(e, v); };
}

}  // namespace ratprog::testing
