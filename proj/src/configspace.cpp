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

#include "ratprog/configspace.hpp"

#include <algorithm>
#include <sstream>

#include "ratprog/errors.hpp"
#include "ratprog/expr_parser.hpp"

namespace ratprog {

std::vector<std::string> ConstraintSet::constraint_text() const {
  std::vector<std::string> out;
  for (const auto& c : block_constraints) out.push_back(to_string(c));
  return out;
}

EnumerationMode parse_mode(std::string_view text) {
  if (text == "pow2") return EnumerationMode::PowersOfTwo;
  if (text == "mult32") return EnumerationMode::MultiplesOf32;
  throw DomainError("unknown enumeration mode '" + std::string(text) + "' (expected pow2 or mult32)");
}

const char* to_string(EnumerationMode mode) {
  return mode == EnumerationMode::PowersOfTwo ? "pow2" : "mult32";
}

void EnumerationPolicy::check() const {
  if (dimensionality < 1 || dimensionality > 3)
    throw DomainError("block dimensionality must be 1, 2 or 3, got " + std::to_string(dimensionality));
  for (auto c : caps)
    if (c < 1) throw DomainError("per-dimension caps must be >= 1");
}

namespace configspace {

namespace {

constexpr const char* kAllowed[] = {"bx", "by", "bz", "N"};

void check_names(const Expr& e, std::string_view what) {
  for (const auto& v : free_variables(e)) {
    if (std::find(std::begin(kAllowed), std::end(kAllowed), v) == std::end(kAllowed))
      throw EvalError(std::string(what) + " references unknown variable '" + v + "' (allowed: bx, by, bz, N)");
  }
}

std::string strip(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  auto b = line.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = line.find_last_not_of(" \t\r");
  return std::string(line.substr(b, e - b + 1));
}

template <class Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string line = strip(text.substr(start, end - start));
    if (!line.empty()) fn(line, line_no);
    start = end + 1;
  }
}

// Values one active dimension ranges over before the product rules apply.
std::vector<std::int64_t> axis_values(EnumerationMode mode, std::int64_t cap) {
  std::vector<std::int64_t> out;
  if (mode == EnumerationMode::PowersOfTwo) {
    for (std::int64_t v = 1; v <= cap; v *= 2) out.push_back(v);
  } else {
    for (std::int64_t v = 1; v <= cap; ++v) out.push_back(v);
  }
  return out;
}

}  // namespace

Expr parse_constraint(std::string_view text) { return parse_expression(text); }

std::vector<Expr> parse_constraint_file(std::string_view text) {
  std::vector<Expr> out;
  for_each_line(text, [&](const std::string& line, std::size_t line_no) {
    try {
      Expr e = parse_expression(line);
      if (!e.is_boolean()) throw ParseError("constraint is not a condition", 0);
      out.push_back(std::move(e));
    } catch (const ParseError& err) {
      throw ParseError("constraint file line " + std::to_string(line_no) + ": " + err.what(), line_no);
    }
  });
  return out;
}

std::array<std::optional<Expr>, 3> parse_grid_file(std::string_view text) {
  std::array<std::optional<Expr>, 3> out;
  for_each_line(text, [&](const std::string& line, std::size_t line_no) {
    auto where = "grid file line " + std::to_string(line_no) + ": ";
    auto eq = line.find('=');
    if (eq == std::string::npos || (eq + 1 < line.size() && line[eq + 1] == '='))
      throw ParseError(where + "expected 'gx = <expr>'", line_no);
    std::string name = strip(std::string_view(line).substr(0, eq));
    int index = name == "gx" ? 0 : name == "gy" ? 1 : name == "gz" ? 2 : -1;
    if (index < 0) throw ParseError(where + "unknown grid dimension '" + name + "'", line_no);
    if (out[static_cast<std::size_t>(index)]) throw ParseError(where + "'" + name + "' given twice", line_no);
    try {
      out[static_cast<std::size_t>(index)] = parse_arithmetic(std::string_view(line).substr(eq + 1));
    } catch (const ParseError& err) {
      throw ParseError(where + err.what(), line_no);
    }
  });
  return out;
}

Valuation block_valuation(const BlockDims& block, std::int64_t n) {
  return {{"bx", block.bx}, {"by", block.by}, {"bz", block.bz}, {"N", n}};
}

std::vector<BlockDims> enumerate_block_configs(const EnumerationPolicy& policy, const DeviceSpec& spec,
                                               const ConstraintSet& constraints, std::int64_t n) {
  policy.check();
  if (n < 1) throw DomainError("data size N must be >= 1");
  for (const auto& c : constraints.block_constraints) check_names(c, "constraint");
  const std::int64_t limit = std::min(spec.t_max, kMaxThreadsPerBlock);
  const int dims = policy.dimensionality;

  auto values_for = [&](int d) {
    if (d >= dims) return std::vector<std::int64_t>{1};
    return axis_values(policy.mode, std::min(policy.caps[static_cast<std::size_t>(d)], limit));
  };
  const auto xs = values_for(0), ys = values_for(1), zs = values_for(2);

  std::vector<BlockDims> out;
  for (auto bx : xs) {
    for (auto by : ys) {
      if (bx * by > limit) break;
      for (auto bz : zs) {
        const std::int64_t threads = bx * by * bz;
        if (threads > limit) break;
        if (threads % occupancy::kWarpSize != 0) continue;
        BlockDims b{bx, by, bz};
        if (!constraints.block_constraints.empty()) {
          Valuation env = block_valuation(b, n);
          bool ok = std::all_of(constraints.block_constraints.begin(), constraints.block_constraints.end(),
                                [&](const Expr& c) { return evaluate_bool(c, env); });
          if (!ok) continue;
        }
        out.push_back(b);
      }
    }
  }
  return out;
}

GridDims grid_for(const BlockDims& block, const ConstraintSet& constraints, std::int64_t n) {
  Valuation env = block_valuation(block, n);
  std::array<std::int64_t, 3> dims = {1, 1, 1};
  static const char* names[] = {"gx", "gy", "gz"};
  for (std::size_t d = 0; d < 3; ++d) {
    const auto& formula = constraints.grid_formulas[d];
    if (!formula) continue;
    check_names(*formula, "grid formula");
    Rational v = evaluate_number(*formula, env);
    if (!is_integer(v))
      throw DomainError(std::string(names[d]) + " = " + to_string(*formula) + " evaluates to " + to_string(v) +
                        ", which is not an integer; wrap the formula in ceil(...) or floor(...)");
    if (v < 1)
      throw DomainError(std::string(names[d]) + " = " + to_string(*formula) + " evaluates to " + to_string(v) +
                        ", below 1");
    dims[d] = static_cast<std::int64_t>(boost::multiprecision::numerator(v));
  }
  return {dims[0], dims[1], dims[2]};
}

}  // namespace configspace

}  // namespace ratprog
