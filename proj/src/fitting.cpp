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

#include "ratprog/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ratprog/errors.hpp"
#include "ratprog/kernels.hpp"
#include "ratprog/random.hpp"

namespace ratprog::fitting {

namespace {

// Coefficients below this fraction of the largest one (in the rescaled
// problem, where every monomial is at most 1 in magnitude) are solver noise.
constexpr double kPruneTolerance = 1e-13;
constexpr double kDegenerateDenominator = 1e-10;
constexpr int kReweightPasses = 3;
constexpr double kTieTolerance = 1e-9;
// Coefficients are snapped to the simplest fraction this close (relative)
// so exact models come back with their exact coefficients.
const Rational kSnapTolerance = Rational(1, 10000000000);

Polynomial snapped(const Polynomial& p) {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    Rational slack = abs(t.coeff) * kSnapTolerance;
    terms.push_back({simplest_between(t.coeff - slack, t.coeff + slack), t.exponents});
  }
  return Polynomial(p.n_vars(), std::move(terms));
}

void check_samples(const std::vector<SamplePoint>& samples, const DegreeBounds& bounds) {
  bounds.check();
  if (samples.empty()) throw DimensionError("at least one sample is required");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (s.inputs.size() != bounds.n_vars())
      throw DimensionError("sample " + std::to_string(i) + " has " + std::to_string(s.inputs.size()) +
                           " inputs, bounds cover " + std::to_string(bounds.n_vars()) + " variables");
    if (!std::isfinite(s.value)) throw DomainError("sample " + std::to_string(i) + " has a non-finite value");
    for (double x : s.inputs)
      if (!std::isfinite(x)) throw DomainError("sample " + std::to_string(i) + " has a non-finite input");
  }
}

std::string column_label(char block, const Exponents& e) {
  std::string s(1, block);
  s += ":";
  for (std::size_t k = 0; k < e.size(); ++k) s += (k ? "," : "") + std::to_string(e[k]);
  return s;
}

double relative_error(double predicted, double observed) {
  double diff = std::abs(predicted - observed);
  if (std::isnan(diff)) return std::numeric_limits<double>::infinity();
  return observed != 0 ? diff / std::abs(observed) : diff;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

DesignMatrix build_design_matrix(const std::vector<SamplePoint>& samples, const DegreeBounds& bounds) {
  check_samples(samples, bounds);
  kernels::ScaledBasis basis{monomial_basis(bounds.numerator), monomial_basis(bounds.denominator),
                             std::vector<double>(bounds.n_vars(), 1.0), 1.0};
  DesignMatrix out;
  out.matrix = kernels::design_matrix_parallel(samples, basis);
  for (const auto& e : basis.numerator) out.columns.push_back(column_label('p', e));
  for (const auto& e : basis.denominator) out.columns.push_back(column_label('q', e));
  return out;
}

HomogeneousSolution solve_homogeneous(const Eigen::MatrixXd& matrix) {
  if (matrix.size() == 0) throw DegenerateSystemError("empty design matrix");
  if (!matrix.allFinite()) throw DegenerateSystemError("design matrix has non-finite entries");
  if (matrix.cwiseAbs().maxCoeff() == 0) throw DegenerateSystemError("design matrix is identically zero");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix, Eigen::ComputeFullV);
  HomogeneousSolution out;
  out.singular_values = svd.singularValues();
  const double sigma_max = out.singular_values(0);
  const double cutoff = kRankTolerance * sigma_max;
  double smallest_kept = sigma_max;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    if (out.singular_values(i) > cutoff) {
      ++out.rank;
      smallest_kept = out.singular_values(i);
    }
  }
  out.condition = sigma_max / smallest_kept;
  out.coefficients = svd.matrixV().col(matrix.cols() - 1).normalized();
  out.residual = (matrix * out.coefficients).norm();
  return out;
}

double median_relative_error(const RationalFunction& f, const std::vector<SamplePoint>& samples) {
  std::vector<double> errors;
  errors.reserve(samples.size());
  for (const auto& s : samples) errors.push_back(relative_error(f.evaluate(std::span<const double>(s.inputs)), s.value));
  return median(std::move(errors));
}

FitResult fit_rational(const std::vector<SamplePoint>& samples, const DegreeBounds& bounds,
                       const FitOptions& options) {
  check_samples(samples, bounds);
  if (options.holdout_fraction < 0 || options.holdout_fraction >= 1)
    throw DomainError("holdout fraction must lie in [0, 1)");

  std::vector<SamplePoint> train = samples, holdout;
  if (options.holdout_fraction > 0 && samples.size() >= 2) {
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(options.seed);
    rng.shuffle(order);
    auto held = static_cast<std::size_t>(std::lround(options.holdout_fraction * static_cast<double>(samples.size())));
    held = std::clamp<std::size_t>(held, 1, samples.size() - 1);
    std::vector<std::size_t> held_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(held));
    std::vector<std::size_t> train_idx(order.begin() + static_cast<std::ptrdiff_t>(held), order.end());
    // Keep original order within each part.
    std::sort(held_idx.begin(), held_idx.end());
    std::sort(train_idx.begin(), train_idx.end());
    train.clear();
    for (auto i : train_idx) train.push_back(samples[i]);
    for (auto i : held_idx) holdout.push_back(samples[i]);
  }

  const std::size_t n = bounds.n_vars();
  kernels::ScaledBasis basis{monomial_basis(bounds.numerator), monomial_basis(bounds.denominator),
                             std::vector<double>(n, 0.0), 0.0};
  for (const auto& s : train) {
    for (std::size_t k = 0; k < n; ++k) basis.input_scale[k] = std::max(basis.input_scale[k], std::abs(s.inputs[k]));
    basis.value_scale = std::max(basis.value_scale, std::abs(s.value));
  }
  for (auto& s : basis.input_scale)
    if (s == 0) s = 1;
  if (basis.value_scale == 0) basis.value_scale = 1;

  Eigen::MatrixXd a = kernels::design_matrix_parallel(train, basis);
  const auto n_num = static_cast<Eigen::Index>(basis.numerator.size());
  const auto n_den = static_cast<Eigen::Index>(basis.denominator.size());

  // Row i reads p(x) - y q(x). Dividing it by |y q_prev(x)| turns the
  // residual into the relative error of p/q; q_prev starts at 1 and is
  // refined a few times (Sanathanan-Koerner).
  HomogeneousSolution sol = solve_homogeneous(a);
  for (int pass = 0; pass <= kReweightPasses; ++pass) {
    Eigen::MatrixXd w = a;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      double d = pass == 0 ? std::abs(train[static_cast<std::size_t>(i)].value) / basis.value_scale
                           : std::abs(a.row(i).tail(n_den).dot(sol.coefficients.tail(n_den)));
      if (d > 0 && std::isfinite(d)) w.row(i) /= d;
    }
    sol = solve_homogeneous(w);
  }
  Eigen::VectorXd v = sol.coefficients;
  if (v.tail(n_den).cwiseAbs().maxCoeff() < kDegenerateDenominator * v.norm())
    throw DegenerateDenominatorError("fitted denominator is numerically zero; the data is consistent with "
                                     "a polynomial but not with these denominator bounds");
  const double prune = kPruneTolerance * v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) < prune) v(i) = 0;

  // Fold the rescaling back: x_k -> x_k / s_k and y -> y / s_y.
  std::vector<Rational> scales;
  for (double s : basis.input_scale) scales.push_back(from_double(s));
  auto unscale = [&](const Exponents& e) {
    Rational f = 1;
    for (std::size_t k = 0; k < n; ++k)
      if (e[k]) f *= power(scales[k], e[k]);
    return f;
  };
  const Rational value_scale = from_double(basis.value_scale);
  std::vector<Term> num_terms, den_terms;
  for (Eigen::Index i = 0; i < n_num; ++i) {
    const auto& e = basis.numerator[static_cast<std::size_t>(i)];
    if (v(i) != 0) num_terms.push_back({from_double(v(i)) * value_scale / unscale(e), e});
  }
  for (Eigen::Index i = 0; i < n_den; ++i) {
    const auto& e = basis.denominator[static_cast<std::size_t>(i)];
    if (v(n_num + i) != 0) den_terms.push_back({from_double(v(n_num + i)) / unscale(e), e});
  }

  RationalFunction raw =
      RationalFunction(Polynomial(n, std::move(num_terms)), Polynomial(n, std::move(den_terms))).canonical();
  FitResult result{RationalFunction(snapped(raw.numerator()), snapped(raw.denominator())).canonical(),
                   0, sol.rank, 0, sol.condition, std::nullopt, {}};
  const auto& sv = sol.singular_values;
  result.min_singular_value = a.rows() >= a.cols() ? sv(sv.size() - 1) : 0.0;

  double sum_sq = 0;
  bool positive = false, negative = false;
  for (const auto& s : train) {
    std::span<const double> x(s.inputs);
    double q = result.function.denominator().evaluate(x);
    positive = positive || q > 0;
    negative = negative || q < 0;
    double r = result.function.evaluate(x) - s.value;
    sum_sq += r * r;
  }
  result.residual_rms = std::sqrt(sum_sq / static_cast<double>(train.size()));
  if (positive && negative)
    result.warnings.push_back("denominator changes sign across the samples: a pole lies inside the sampled region");
  if (sol.rank < static_cast<std::size_t>(a.cols()) - 1)
    result.warnings.push_back("design matrix is rank deficient (rank " + std::to_string(sol.rank) + " of " +
                              std::to_string(a.cols()) + " columns): the fit is not unique");
  if (!holdout.empty()) result.holdout_relative_error = median_relative_error(result.function, holdout);
  return result;
}

BoundsSelection select_bounds(const std::vector<SamplePoint>& samples, const std::vector<DegreeBounds>& candidates,
                              const FitOptions& options) {
  if (candidates.empty()) throw DomainError("no candidate degree bounds given");
  FitOptions opts = options;
  if (opts.holdout_fraction <= 0) opts.holdout_fraction = 0.25;
  if (samples.size() < 2) throw DomainError("bound selection needs at least two samples");

  BoundsSelection out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double score = std::numeric_limits<double>::infinity();
    try {
      score = *fit_rational(samples, candidates[i], opts).holdout_relative_error;
    } catch (const NumericalError&) {
    }
    out.scores.push_back({candidates[i], score, candidates[i].unknowns()});
    if (i == 0) continue;
    const auto& cur = out.scores[i];
    const auto& top = out.scores[best];
    bool tie = std::abs(cur.holdout_error - top.holdout_error) <= kTieTolerance ||
               (std::isinf(cur.holdout_error) && std::isinf(top.holdout_error));
    if ((!tie && cur.holdout_error < top.holdout_error) || (tie && cur.coefficients < top.coefficients)) best = i;
  }
  out.best = out.scores[best].bounds;
  return out;
}

}  // namespace ratprog::fitting
