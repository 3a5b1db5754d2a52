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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ratprog/expr.hpp"
#include "ratprog/occupancy.hpp"

namespace ratprog {

struct BlockDims {
  std::int64_t bx = 1, by = 1, bz = 1;

  std::int64_t threads() const { return bx * by * bz; }
  friend auto operator<=>(const BlockDims&, const BlockDims&) = default;
};

struct GridDims {
  std::int64_t gx = 1, gy = 1, gz = 1;
  friend auto operator<=>(const GridDims&, const GridDims&) = default;
};

struct LaunchConfig {
  BlockDims block;
  GridDims grid;
  friend bool operator==(const LaunchConfig&, const LaunchConfig&) = default;
};

/// User constraints on block shape plus grid formulas, all over
/// {bx, by, bz, N}.
struct ConstraintSet {
  std::vector<Expr> block_constraints;
  std::array<std::optional<Expr>, 3> grid_formulas;  // gx, gy, gz

  /// Source text of each expression, for documents that embed the set.
  std::vector<std::string> constraint_text() const;
};

enum class EnumerationMode { PowersOfTwo, MultiplesOf32 };

EnumerationMode parse_mode(std::string_view text);
const char* to_string(EnumerationMode mode);

struct EnumerationPolicy {
  int dimensionality = 1;
  EnumerationMode mode = EnumerationMode::PowersOfTwo;
  std::array<std::int64_t, 3> caps = {1024, 1024, 64};

  void check() const;
};

namespace configspace {

/// Hard ceiling on threads per block regardless of device.
inline constexpr std::int64_t kMaxThreadsPerBlock = 1024;

/// Parses the constraint language (see expr_parser.hpp).
Expr parse_constraint(std::string_view text);

/// One boolean expression per line; blank lines and `#` comments skipped.
std::vector<Expr> parse_constraint_file(std::string_view text);

/// Lines `gx = <expr>`, `gy = <expr>`, `gz = <expr>`.
std::array<std::optional<Expr>, 3> parse_grid_file(std::string_view text);

Valuation block_valuation(const BlockDims& block, std::int64_t n);

/// All block shapes of the policy's dimensionality whose active dimensions
/// range over the mode's per-dimension values (powers of two, or every
/// integer for the multiples-of-32 mode), whose thread count is a multiple
/// of 32 and at most min(t_max, 1024), within the per-dimension caps, and
/// satisfying every block constraint at N = n. Sorted by (bx, by, bz).
std::vector<BlockDims> enumerate_block_configs(const EnumerationPolicy& policy, const DeviceSpec& spec,
                                               const ConstraintSet& constraints, std::int64_t n);

/// Evaluates the grid formulas at (block, N = n); unset formulas give 1.
GridDims grid_for(const BlockDims& block, const ConstraintSet& constraints, std::int64_t n);

}  // namespace configspace

}  // namespace ratprog
