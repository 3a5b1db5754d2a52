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

#include "ratprog/pipeline.hpp"

#include <algorithm>
#include <set>

#include "ratprog/errors.hpp"
#include "ratprog/expr_parser.hpp"
#include "ratprog/ir.hpp"
#include "ratprog/kernels.hpp"

namespace ratprog {

using nlohmann::json;

namespace {

Objective parse_objective(const std::string& s) {
  if (s == "minimize") return Objective::Minimize;
  if (s == "maximize") return Objective::Maximize;
  throw SchemaError("objective must be 'minimize' or 'maximize', got '" + s + "'");
}

const char* objective_name(Objective o) { return o == Objective::Minimize ? "minimize" : "maximize"; }

const std::set<std::string> kDriverInputs = {"N", "bx", "by", "bz"};

// Rethrow a numerical failure with the metric name attached, keeping its type.
[[noreturn]] void rethrow_for_metric(const std::string& metric) {
  try {
    throw;
  } catch (const DegenerateDenominatorError& e) {
    throw DegenerateDenominatorError("fitting metric '" + metric + "': " + e.what());
  } catch (const DegenerateSystemError& e) {
    throw DegenerateSystemError("fitting metric '" + metric + "': " + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError("fitting metric '" + metric + "': " + e.what());
  } catch (const DomainError& e) {
    throw DomainError("fitting metric '" + metric + "': " + e.what());
  }
}

}  // namespace

ModelTemplate make_template(RationalProgram program, std::vector<std::string> device_attributes, Objective objective) {
  ModelTemplate t;
  for (const auto& [slot, decl] : program.placeholders) {
    if (!t.metric_slots.emplace(decl.metric, slot).second)
      throw SchemaError("metric '" + decl.metric + "' is bound to more than one placeholder");
  }
  t.program = std::move(program);
  t.device_attributes = std::move(device_attributes);
  t.objective = objective;
  require_valid(t.program, /*allow_placeholders=*/true);
  return t;
}

ModelTemplate template_from_json(const json& doc) {
  RationalProgram prog = program_from_json(doc, /*allow_placeholders=*/true);
  std::vector<std::string> attrs;
  if (doc.contains("device_attributes")) {
    if (!doc["device_attributes"].is_array()) throw SchemaError("'device_attributes' must be an array of strings");
    for (const auto& a : doc["device_attributes"]) {
      if (!a.is_string()) throw SchemaError("'device_attributes' must be an array of strings");
      attrs.push_back(a.get<std::string>());
    }
  }
  Objective obj = parse_objective(doc.value("objective", std::string("minimize")));
  return make_template(std::move(prog), std::move(attrs), obj);
}

json driver_to_json(const DriverProgram& driver) {
  json doc = program_to_json(driver.program);
  json grid = json::object();
  static const char* names[] = {"gx", "gy", "gz"};
  for (std::size_t d = 0; d < 3; ++d)
    if (driver.constraints.grid_formulas[d]) grid[names[d]] = to_string(*driver.constraints.grid_formulas[d]);
  doc["driver"] = {
      {"device", device_to_json(driver.device)},
      {"kernel", {{"r", driver.usage.r}, {"z", driver.usage.z}}},
      {"objective", objective_name(driver.objective)},
      {"config_space",
       {{"dim", driver.policy.dimensionality},
        {"mode", to_string(driver.policy.mode)},
        {"caps", driver.policy.caps},
        {"constraints", driver.constraints.constraint_text()},
        {"grid", grid}}},
  };
  return doc;
}

DriverProgram driver_from_json(const json& doc) {
  DriverProgram d;
  d.program = program_from_json(doc);
  if (!doc.contains("driver") || !doc["driver"].is_object()) throw SchemaError("driver document lacks a 'driver' section");
  const json& s = doc["driver"];
  try {
    d.device = device_from_json(s.at("device"));
    d.usage = {s.at("kernel").at("r").get<std::int64_t>(), s.at("kernel").at("z").get<std::int64_t>()};
    d.objective = parse_objective(s.value("objective", std::string("minimize")));
    const json& cs = s.at("config_space");
    d.policy.dimensionality = cs.at("dim").get<int>();
    d.policy.mode = parse_mode(cs.at("mode").get<std::string>());
    if (cs.contains("caps")) d.policy.caps = cs["caps"].get<std::array<std::int64_t, 3>>();
    for (const auto& c : cs.value("constraints", json::array())) {
      Expr e = parse_expression(c.get<std::string>());
      if (!e.is_boolean()) throw SchemaError("constraint '" + c.get<std::string>() + "' is not a condition");
      d.constraints.block_constraints.push_back(e);
    }
    static const char* names[] = {"gx", "gy", "gz"};
    if (cs.contains("grid")) {
      for (std::size_t i = 0; i < 3; ++i)
        if (cs["grid"].contains(names[i]))
          d.constraints.grid_formulas[i] = parse_arithmetic(cs["grid"][names[i]].get<std::string>());
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("driver section: ") + e.what());
  }
  d.policy.check();
  for (const auto& v : d.program.input_vars)
    if (!kDriverInputs.count(v)) throw SchemaError("driver input '" + v + "' is not N, bx, by or bz");
  return d;
}

DriverBuild build_driver(const ModelTemplate& tmpl, const ProfileDataset& dataset, const DeviceSpec& device,
                         const BuildOptions& options) {
  device.check();
  for (const auto& [metric, slot] : tmpl.metric_slots)
    if (!dataset.has(metric)) throw MissingMetricError("dataset has no samples for metric '" + metric + "'");
  Valuation attributes = device.attributes();
  for (const auto& a : tmpl.device_attributes)
    if (!attributes.count(a)) throw MissingMetricError("device has no attribute '" + a + "'");

  DriverBuild out;
  std::map<std::string, RationalFunction> bindings;
  for (const auto& [metric, slot] : tmpl.metric_slots) {
    const Placeholder& decl = tmpl.program.placeholders.at(slot);
    if (decl.args != dataset.var_names) {
      std::string have, want;
      for (const auto& v : dataset.var_names) have += (have.empty() ? "" : ",") + v;
      for (const auto& v : decl.args) want += (want.empty() ? "" : ",") + v;
      throw DimensionError("slot '" + slot + "' applies '" + metric + "' to (" + want +
                           ") but the dataset is over (" + have + ")");
    }
    auto it = options.bounds.find(metric);
    DegreeBounds bounds = it != options.bounds.end() ? it->second : DegreeBounds::uniform(decl.args.size(), 2);
    try {
      auto fit = fitting::fit_rational(dataset.samples(metric), bounds, options.fit);
      bindings.emplace(slot, fit.function);
      out.fits.emplace(metric, std::move(fit));
    } catch (const Error&) {
      rethrow_for_metric(metric);
    }
  }

  RationalProgram bound = bind_template(tmpl.program, bindings);
  Valuation constants;
  for (const auto& v : bound.input_vars) {
    auto it = attributes.find(v);
    if (it != attributes.end() && !kDriverInputs.count(v)) constants.emplace(v, it->second);
  }
  bound = specialize(bound, constants);
  for (const auto& v : bound.input_vars)
    if (!kDriverInputs.count(v))
      throw ValidationError("driver input '" + v + "' is neither N, a block dimension, nor a device attribute", {v});
  require_valid(bound);

  out.driver = DriverProgram{std::move(bound), options.policy, options.constraints, device, options.usage,
                             tmpl.objective};
  return out;
}

namespace pipeline {

json report_to_json(const SelectionReport& r) {
  const auto& b = r.chosen.block;
  const auto& g = r.chosen.grid;
  json table = json::array();
  for (const auto& row : r.table) {
    table.push_back({{"bx", row.block.bx},
                     {"by", row.block.by},
                     {"bz", row.block.bz},
                     {"predicted", to_string(row.predicted)},
                     {"predicted_decimal", to_double(row.predicted)},
                     {"occupancy", to_string(row.occupancy)}});
  }
  return {{"n", r.n},
          {"chosen", {{"gx", g.gx}, {"gy", g.gy}, {"gz", g.gz}, {"bx", b.bx}, {"by", b.by}, {"bz", b.bz}}},
          {"predicted", to_string(r.predicted)},
          {"predicted_decimal", to_double(r.predicted)},
          {"ties", r.ties},
          {"source", r.source == Source::Cache ? "cache" : "fresh"},
          {"table", table}};
}

std::size_t preferred_row(const std::vector<ConfigRow>& rows, Objective objective, const Rational& margin,
                          std::size_t* ties) {
  if (rows.empty()) throw NoFeasibleConfigError("no configurations to choose from");
  auto better = [&](const Rational& a, const Rational& b) { return objective == Objective::Minimize ? a < b : a > b; };
  const Rational* best = &rows.front().predicted;
  for (const auto& r : rows)
    if (better(r.predicted, *best)) best = &r.predicted;
  const Rational slack = margin * abs(*best);

  std::size_t chosen = rows.size();
  std::size_t tied = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (abs(rows[i].predicted - *best) > slack) continue;
    ++tied;
    if (chosen == rows.size()) {
      chosen = i;
      continue;
    }
    const auto& a = rows[i];
    const auto& c = rows[chosen];
    auto key = [](const ConfigRow& r) { return std::make_tuple(r.occupancy, r.block.bx, -r.block.by, -r.block.bz); };
    if (key(a) > key(c)) chosen = i;
  }
  if (ties) *ties = tied - 1;
  return chosen;
}

SelectionReport select_config(const DriverProgram& driver, std::int64_t n, HistoryCache* cache,
                              const SelectOptions& options) {
  if (n < 1) throw DomainError("data size N must be >= 1, got " + std::to_string(n));
  SelectionReport report;
  report.n = n;
  if (cache) {
    if (auto hit = cache->lookup(n)) {
      report.chosen = hit->config;
      report.predicted = hit->predicted;
      report.source = Source::Cache;
      return report;
    }
  }

  auto blocks = configspace::enumerate_block_configs(driver.policy, driver.device, driver.constraints, n);
  if (blocks.empty()) throw NoFeasibleConfigError("no block configuration satisfies the constraints at N = " + std::to_string(n));

  std::vector<Valuation> points;
  points.reserve(blocks.size());
  for (const auto& b : blocks) points.push_back(configspace::block_valuation(b, n));
  std::vector<Rational> values = kernels::evaluate_parallel(driver.program, points);

  report.table.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    report.table.push_back(
        {blocks[i], values[i], occupancy::occupancy_ratio(driver.device, driver.usage, blocks[i].threads())});

  std::size_t chosen = preferred_row(report.table, driver.objective, options.tie_margin, &report.ties);
  report.chosen.block = report.table[chosen].block;
  report.predicted = report.table[chosen].predicted;
  report.chosen.grid = configspace::grid_for(report.chosen.block, driver.constraints, n);
  if (cache) cache->record(n, report.chosen, report.predicted);
  return report;
}

Comparison compare_exhaustive(const DriverProgram& driver, const CostOracle& oracle, std::int64_t n,
                              const SelectOptions& options) {
  SelectionReport report = select_config(driver, n, nullptr, options);
  std::vector<ConfigRow> truth = report.table;
  for (auto& row : truth) {
    row.predicted = oracle(configspace::block_valuation(row.block, n));
    if (row.predicted <= 0)
      throw DomainError("oracle is not positive at (" + std::to_string(row.block.bx) + "," +
                        std::to_string(row.block.by) + "," + std::to_string(row.block.bz) + ")");
  }
  // The oracle is the true cost: lower is better regardless of the driver's
  // objective direction.
  std::size_t best = preferred_row(truth, Objective::Minimize, options.tie_margin);
  Comparison c;
  c.n = n;
  c.predicted_choice = report.chosen.block;
  c.oracle_choice = truth[best].block;
  c.oracle_best = truth[best].predicted;
  for (const auto& row : truth)
    if (row.block == report.chosen.block) c.oracle_at_predicted = row.predicted;
  c.regret = c.oracle_at_predicted / c.oracle_best;
  return c;
}

}  // namespace pipeline

}  // namespace ratprog
