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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratprog/expr.hpp"
#include "ratprog/fitting.hpp"

namespace ratprog {

/// Profiled low-level metric values over points of (data, program)
/// parameter space.
struct ProfileDataset {
  std::vector<std::string> var_names;
  std::map<std::string, std::vector<SamplePoint>> metrics;
  std::vector<std::string> metric_order;  // first appearance

  void add(const std::string& metric, SamplePoint sample);
  const std::vector<SamplePoint>& samples(const std::string& metric) const;
  bool has(const std::string& metric) const { return metrics.count(metric) > 0; }
};

/// CSV with header `metric,<var>...,value`. Blank lines and lines starting
/// with `#` are skipped. Errors report the 1-based line number.
ProfileDataset load_profile(std::string_view csv);
std::string to_csv(const ProfileDataset& dataset);

/// Multiplies every observed value by `factor`.
ProfileDataset scale_values(const ProfileDataset& dataset, double factor);

using AnalyticFunction = std::function<double(std::span<const double>)>;

/// Closed-form function from an arithmetic expression over `var_names`.
AnalyticFunction analytic_from_expr(const Expr& e, const std::vector<std::string>& var_names);

/// value = model(point) * (1 + eps), eps ~ Normal(0, sigma), drawn in
/// metric-then-point order from one seeded stream. sigma = 0 draws nothing.
ProfileDataset simulate_profile(const std::vector<std::pair<std::string, AnalyticFunction>>& model,
                                const std::vector<std::string>& var_names,
                                const std::vector<std::vector<double>>& grid, double sigma, std::uint64_t seed);

}  // namespace ratprog
