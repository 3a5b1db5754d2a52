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

#include "ratprog/profile.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ratprog/errors.hpp"
#include "ratprog/random.hpp"

namespace ratprog {

void ProfileDataset::add(const std::string& metric, SamplePoint sample) {
  if (metric.empty()) throw DomainError("metric names must be non-empty");
  if (sample.inputs.size() != var_names.size())
    throw DimensionError("sample for '" + metric + "' has " + std::to_string(sample.inputs.size()) +
                         " inputs, dataset has " + std::to_string(var_names.size()) + " variables");
  auto [it, inserted] = metrics.try_emplace(metric);
  if (inserted) metric_order.push_back(metric);
  it->second.push_back(std::move(sample));
}

const std::vector<SamplePoint>& ProfileDataset::samples(const std::string& metric) const {
  auto it = metrics.find(metric);
  if (it == metrics.end()) throw MissingMetricError("dataset has no metric '" + metric + "'");
  return it->second;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& cell, std::size_t line_no) {
  if (cell.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty numeric cell", line_no);
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(cell.c_str(), &end);
  if (*end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw ParseError("line " + std::to_string(line_no) + ": '" + cell + "' is not a finite number", line_no);
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ProfileDataset load_profile(std::string_view csv) {
  ProfileDataset out;
  bool have_header = false;
  std::size_t columns = 0;
  std::size_t line_no = 0, start = 0;
  while (start < csv.size()) {
    auto end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    ++line_no;
    std::string line = trim(csv.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line);
    if (!have_header) {
      if (fields.size() < 2 || fields.front() != "metric" || fields.back() != "value")
        throw ParseError("line " + std::to_string(line_no) + ": header must be 'metric,<vars...>,value'", line_no);
      out.var_names.assign(fields.begin() + 1, fields.end() - 1);
      for (const auto& v : out.var_names)
        if (v.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty variable name", line_no);
      columns = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != columns)
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    if (fields.front().empty()) throw ParseError("line " + std::to_string(line_no) + ": empty metric name", line_no);
    SamplePoint s;
    for (std::size_t i = 1; i + 1 < fields.size(); ++i) s.inputs.push_back(parse_number(fields[i], line_no));
    s.value = parse_number(fields.back(), line_no);
    out.add(fields.front(), std::move(s));
  }
  if (!have_header) throw ParseError("line 1: missing header 'metric,<vars...>,value'", 1);
  return out;
}

std::string to_csv(const ProfileDataset& dataset) {
  std::string out = "metric";
  for (const auto& v : dataset.var_names) out += "," + v;
  out += ",value\n";
  for (const auto& metric : dataset.metric_order) {
    for (const auto& s : dataset.metrics.at(metric)) {
      out += metric;
      for (double x : s.inputs) out += "," + format_double(x);
      out += "," + format_double(s.value) + "\n";
    }
  }
  return out;
}

ProfileDataset scale_values(const ProfileDataset& dataset, double factor) {
  ProfileDataset out = dataset;
  for (auto& [name, samples] : out.metrics)
    for (auto& s : samples) s.value *= factor;
  return out;
}

AnalyticFunction analytic_from_expr(const Expr& e, const std::vector<std::string>& var_names) {
  for (const auto& v : free_variables(e)) {
    if (std::find(var_names.begin(), var_names.end(), v) == var_names.end())
      throw EvalError("model expression references unknown variable '" + v + "'");
  }
  return [e, var_names](std::span<const double> point) {
    Valuation env;
    for (std::size_t k = 0; k < var_names.size(); ++k) env[var_names[k]] = from_double(point[k]);
    return to_double(evaluate_number(e, env));
  };
}

ProfileDataset simulate_profile(const std::vector<std::pair<std::string, AnalyticFunction>>& model,
                                const std::vector<std::string>& var_names,
                                const std::vector<std::vector<double>>& grid, double sigma, std::uint64_t seed) {
  if (grid.empty()) throw DomainError("simulation grid is empty");
  if (sigma < 0 || !std::isfinite(sigma)) throw DomainError("noise level must be a finite non-negative number");
  ProfileDataset out;
  out.var_names = var_names;
  Rng rng(seed);
  for (const auto& [metric, fn] : model) {
    for (const auto& point : grid) {
      double value = fn(point);
      if (sigma > 0) value *= 1 + sigma * rng.normal();
      out.add(metric, SamplePoint{point, value});
    }
  }
  return out;
}

}  // namespace ratprog
