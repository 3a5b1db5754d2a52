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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ratprog/ratfunc.hpp"

namespace ratprog {

struct SamplePoint {
  std::vector<double> inputs;
  double value = 0;
};

namespace fitting {

/// Relative singular-value cutoff for numerical rank.
inline constexpr double kRankTolerance = 1e-10;

struct DesignMatrix {
  Eigen::MatrixXd matrix;
  std::vector<std::string> columns;  // "p:<exponents>" then "q:<exponents>"
};

/// Linearization p(x) - y*q(x) = 0: one row per sample holding the numerator
/// monomials, then -y times the denominator monomials, in monomial_basis
/// order.
DesignMatrix build_design_matrix(const std::vector<SamplePoint>& samples, const DegreeBounds& bounds);

struct HomogeneousSolution {
  Eigen::VectorXd coefficients;  // unit norm
  Eigen::VectorXd singular_values;
  std::size_t rank = 0;
  double condition = 0;  // sigma_max / smallest sigma above the rank cutoff
  double residual = 0;   // ||A v||
};

/// Unit vector minimizing ||A v||: the right singular vector of the smallest
/// singular value (or a null-space vector when A has fewer rows than
/// columns).
HomogeneousSolution solve_homogeneous(const Eigen::MatrixXd& matrix);

struct FitOptions {
  double holdout_fraction = 0;
  std::uint64_t seed = 0;
};

struct FitResult {
  RationalFunction function;
  double residual_rms = 0;
  std::size_t rank = 0;
  double min_singular_value = 0;
  double condition_estimate = 0;
  std::optional<double> holdout_relative_error;
  std::vector<std::string> warnings;
};

/// Homogeneous least-squares fit of a rational function within `bounds`.
/// Inputs and values are rescaled to unit magnitude for the solve and the
/// scaling is folded back into the exact coefficients, which are returned
/// in canonical form. With a holdout fraction, that share of the samples
/// (seeded shuffle) is excluded from the fit and the median relative error
/// on them is reported.
FitResult fit_rational(const std::vector<SamplePoint>& samples, const DegreeBounds& bounds,
                       const FitOptions& options = {});

struct BoundsScore {
  DegreeBounds bounds;
  double holdout_error;
  std::size_t coefficients;
};

struct BoundsSelection {
  DegreeBounds best;
  std::vector<BoundsScore> scores;
};

/// Picks the candidate with the smallest held-out median relative error;
/// ties (within 1e-9 absolute) go to fewer coefficients, then list order.
BoundsSelection select_bounds(const std::vector<SamplePoint>& samples, const std::vector<DegreeBounds>& candidates,
                              const FitOptions& options = {0.25, 0});

/// Median of |f(x) - y| / |y| over the samples.
double median_relative_error(const RationalFunction& f, const std::vector<SamplePoint>& samples);

}  // namespace fitting

}  // namespace ratprog
