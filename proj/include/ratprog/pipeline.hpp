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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ratprog/configspace.hpp"
#include "ratprog/fitting.hpp"
#include "ratprog/history.hpp"
#include "ratprog/occupancy.hpp"
#include "ratprog/profile.hpp"
#include "ratprog/program.hpp"

namespace ratprog {

enum class Objective { Minimize, Maximize };

/// A program with one placeholder per low-level metric. Device attribute
/// variables are folded to constants when the driver is built.
struct ModelTemplate {
  RationalProgram program;
  std::map<std::string, std::string> metric_slots;  // metric -> slot
  std::vector<std::string> device_attributes;
  Objective objective = Objective::Minimize;
};

ModelTemplate template_from_json(const nlohmann::json& doc);
ModelTemplate make_template(RationalProgram program, std::vector<std::string> device_attributes = {},
                            Objective objective = Objective::Minimize);

/// The bound, device-specialized program plus what is needed to search its
/// configuration space at run time.
struct DriverProgram {
  RationalProgram program;
  EnumerationPolicy policy;
  ConstraintSet constraints;
  DeviceSpec device;
  KernelResourceUsage usage;
  Objective objective = Objective::Minimize;
};

nlohmann::json driver_to_json(const DriverProgram& driver);
DriverProgram driver_from_json(const nlohmann::json& doc);

struct BuildOptions {
  std::map<std::string, DegreeBounds> bounds;  // per metric; default 2 per variable
  fitting::FitOptions fit;
  EnumerationPolicy policy;
  ConstraintSet constraints;
  KernelResourceUsage usage;
};

struct DriverBuild {
  DriverProgram driver;
  std::map<std::string, fitting::FitResult> fits;
};

/// Fits every templated metric, binds the fits, and folds device attributes
/// into constants. The result reads only N and block dimensions.
DriverBuild build_driver(const ModelTemplate& tmpl, const ProfileDataset& dataset, const DeviceSpec& device,
                         const BuildOptions& options = {});

namespace pipeline {

inline const Rational kDefaultTieMargin = Rational(1, 1000000000);

struct ConfigRow {
  BlockDims block;
  Rational predicted;
  Rational occupancy;
};

enum class Source { Fresh, Cache };

struct SelectionReport {
  std::int64_t n = 0;
  LaunchConfig chosen;
  Rational predicted;
  std::vector<ConfigRow> table;
  std::size_t ties = 0;
  Source source = Source::Fresh;
};

nlohmann::json report_to_json(const SelectionReport& report);

struct SelectOptions {
  Rational tie_margin = kDefaultTieMargin;
};

/// Index into `rows` of the preferred configuration: best predicted value,
/// then among rows within the relative tie margin of it, higher occupancy,
/// larger bx, smaller by, smaller bz.
std::size_t preferred_row(const std::vector<ConfigRow>& rows, Objective objective, const Rational& margin,
                          std::size_t* ties = nullptr);

/// Exhaustive search over the driver's configuration space at data size n.
/// A cache hit short-circuits the search; a fresh result is recorded.
SelectionReport select_config(const DriverProgram& driver, std::int64_t n, HistoryCache* cache = nullptr,
                              const SelectOptions& options = {});

using CostOracle = std::function<Rational(const Valuation&)>;

struct Comparison {
  std::int64_t n = 0;
  BlockDims predicted_choice;
  BlockDims oracle_choice;
  Rational oracle_at_predicted;
  Rational oracle_best;
  Rational regret;  // oracle_at_predicted / oracle_best
};

/// Compares the driver's choice against the true best under `oracle` over
/// the same configuration space. The oracle must be positive everywhere.
Comparison compare_exhaustive(const DriverProgram& driver, const CostOracle& oracle, std::int64_t n,
                              const SelectOptions& options = {});

}  // namespace pipeline

}  // namespace ratprog
