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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ratprog/fitting.hpp"
#include "ratprog/occupancy.hpp"
#include "ratprog/program.hpp"

/// Data-parallel inner loops, each with a plain serial reference that the
/// tests hold the OpenMP version to. Results are identical element for
/// element; the parallel versions only change who computes which row.
namespace ratprog::kernels {

struct ScaledBasis {
  std::vector<Exponents> numerator;
  std::vector<Exponents> denominator;
  std::vector<double> input_scale;  // divide inputs by these
  double value_scale = 1;           // divide values by this
};

Eigen::MatrixXd design_matrix_serial(const std::vector<SamplePoint>& samples, const ScaledBasis& basis);
Eigen::MatrixXd design_matrix_parallel(const std::vector<SamplePoint>& samples, const ScaledBasis& basis);

/// Evaluates one program at many valuations. The first failing index (in
/// input order) is rethrown, whichever thread hit it.
std::vector<Rational> evaluate_serial(const RationalProgram& prog, const std::vector<Valuation>& points);
std::vector<Rational> evaluate_parallel(const RationalProgram& prog, const std::vector<Valuation>& points);

struct OccupancyQuery {
  KernelResourceUsage usage;
  std::int64_t threads;
};

std::vector<std::int64_t> active_blocks_serial(const DeviceSpec& spec, const std::vector<OccupancyQuery>& queries);
std::vector<std::int64_t> active_blocks_parallel(const DeviceSpec& spec, const std::vector<OccupancyQuery>& queries);

}  // namespace ratprog::kernels
