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

#include "ratprog/kernels.hpp"

#include <cmath>
#include <exception>

namespace ratprog::kernels {

namespace {

void fill_row(Eigen::MatrixXd& m, Eigen::Index row, const SamplePoint& s, const ScaledBasis& basis) {
  const std::size_t n = basis.input_scale.size();
  double y = s.value / basis.value_scale;
  Eigen::Index col = 0;
  auto monomial = [&](const Exponents& e) {
    double v = 1;
    for (std::size_t k = 0; k < n; ++k)
      if (e[k]) v *= std::pow(s.inputs[k] / basis.input_scale[k], static_cast<double>(e[k]));
    return v;
  };
  for (const auto& e : basis.numerator) m(row, col++) = monomial(e);
  for (const auto& e : basis.denominator) m(row, col++) = -y * monomial(e);
}

}  // namespace

Eigen::MatrixXd design_matrix_serial(const std::vector<SamplePoint>& samples, const ScaledBasis& basis) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(samples.size()),
                    static_cast<Eigen::Index>(basis.numerator.size() + basis.denominator.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) fill_row(m, static_cast<Eigen::Index>(i), samples[i], basis);
  return m;
}

Eigen::MatrixXd design_matrix_parallel(const std::vector<SamplePoint>& samples, const ScaledBasis& basis) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(samples.size()),
                    static_cast<Eigen::Index>(basis.numerator.size() + basis.denominator.size()));
  const auto rows = static_cast<std::int64_t>(samples.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) fill_row(m, i, samples[static_cast<std::size_t>(i)], basis);
  return m;
}

std::vector<Rational> evaluate_serial(const RationalProgram& prog, const std::vector<Valuation>& points) {
  std::vector<Rational> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(evaluate(prog, p));
  return out;
}

std::vector<Rational> evaluate_parallel(const RationalProgram& prog, const std::vector<Valuation>& points) {
  std::vector<Rational> out(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    try {
      out[k] = evaluate(prog, points[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<std::int64_t> active_blocks_serial(const DeviceSpec& spec, const std::vector<OccupancyQuery>& queries) {
  std::vector<std::int64_t> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(occupancy::active_blocks(spec, q.usage, q.threads));
  return out;
}

std::vector<std::int64_t> active_blocks_parallel(const DeviceSpec& spec, const std::vector<OccupancyQuery>& queries) {
  std::vector<std::int64_t> out(queries.size());
  std::vector<std::exception_ptr> errors(queries.size());
  const auto n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    try {
      out[k] = occupancy::active_blocks(spec, queries[k].usage, queries[k].threads);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace ratprog::kernels
