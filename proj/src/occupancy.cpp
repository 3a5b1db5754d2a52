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

#include "ratprog/occupancy.hpp"

#include <algorithm>

#include "ratprog/errors.hpp"
#include "ratprog/expr_parser.hpp"

namespace ratprog {

void DeviceSpec::check() const {
  auto positive = [](std::int64_t v, const char* name) {
    if (v < 1) throw ValidationError(std::string("device ") + name + " must be >= 1", {name});
  };
  positive(r_max, "r_max");
  positive(z_max, "z_max");
  positive(t_max, "t_max");
  positive(b_max, "b_max");
  positive(w_max, "w_max");
  if (t_max % occupancy::kWarpSize != 0)
    throw ValidationError("device t_max must be a multiple of 32", {"t_max"});
}

Valuation DeviceSpec::attributes() const {
  Valuation out = extras;
  out["r_max"] = r_max;
  out["z_max"] = z_max;
  out["t_max"] = t_max;
  out["b_max"] = b_max;
  out["w_max"] = w_max;
  return out;
}

namespace {

std::int64_t int_field(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(std::string("device document is missing '") + key + "'");
  if (!it->is_number_integer()) throw SchemaError(std::string("device field '") + key + "' must be an integer");
  return it->get<std::int64_t>();
}

}  // namespace

DeviceSpec device_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("device document must be an object");
  DeviceSpec spec;
  spec.r_max = int_field(doc, "r_max");
  spec.z_max = int_field(doc, "z_max");
  spec.t_max = int_field(doc, "t_max");
  spec.b_max = int_field(doc, "b_max");
  spec.w_max = int_field(doc, "w_max");
  if (doc.contains("extras")) {
    const auto& extras = doc["extras"];
    if (!extras.is_object()) throw SchemaError("device 'extras' must be an object");
    for (const auto& [name, value] : extras.items()) {
      if (value.is_number_integer())
        spec.extras[name] = Rational(value.get<std::int64_t>());
      else if (value.is_number())
        spec.extras[name] = from_double(value.get<double>());
      else if (value.is_string())
        spec.extras[name] = parse_rational(value.get<std::string>());
      else
        throw SchemaError("device extra '" + name + "' must be a number");
    }
  }
  spec.check();
  return spec;
}

nlohmann::json device_to_json(const DeviceSpec& spec) {
  nlohmann::json extras = nlohmann::json::object();
  for (const auto& [name, value] : spec.extras) {
    if (is_integer(value))
      extras[name] = static_cast<std::int64_t>(boost::multiprecision::numerator(value));
    else
      extras[name] = to_string(value);
  }
  return {{"r_max", spec.r_max}, {"z_max", spec.z_max}, {"t_max", spec.t_max},
          {"b_max", spec.b_max}, {"w_max", spec.w_max}, {"extras", extras}};
}

namespace occupancy {

namespace {

struct Outcome {
  int branch;
  Integer blocks;
};

// The four decision diamonds in order, all in exact integer arithmetic.
Outcome flowchart(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads) {
  if (threads < 1) throw DomainError("threads per block must be >= 1, got " + std::to_string(threads));
  if (usage.r < 0 || usage.z < 0) throw DomainError("kernel resource usage must be non-negative");
  if (threads > spec.t_max) return {0, 0};

  const Integer rmax = spec.r_max, zmax = spec.z_max, bmax = spec.b_max, wmax = spec.w_max;
  const Integer r = usage.r, z = usage.z, t = threads;
  const Integer warp_threads = kWarpSize * wmax;

  if (t * bmax <= warp_threads && r * t * bmax <= rmax && z * bmax <= zmax) return {1, bmax};
  if (warp_threads <= t * bmax && warp_threads * r <= rmax && warp_threads * z <= zmax * t)
    return {2, warp_threads / t};
  if (rmax <= r * t * bmax && rmax <= warp_threads * r && rmax * z <= r * t * zmax)
    return {3, rmax / (r * t)};
  if (zmax <= bmax * z && zmax * t <= warp_threads * z && zmax * r * t <= z * rmax) return {4, zmax / z};
  return {5, 0};
}

}  // namespace

std::int64_t active_blocks(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads) {
  return flowchart(spec, usage, threads).blocks.convert_to<std::int64_t>();
}

int limiting_branch(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads) {
  return flowchart(spec, usage, threads).branch;
}

std::int64_t active_warps(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads) {
  Integer blocks = flowchart(spec, usage, threads).blocks;
  Integer warps = blocks * threads / kWarpSize;
  return std::min(warps, Integer(spec.w_max)).convert_to<std::int64_t>();
}

Rational occupancy_ratio(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads) {
  return Rational(active_warps(spec, usage, threads)) / Rational(spec.w_max);
}

RationalProgram build_occupancy_program() {
  RationalProgram prog;
  prog.input_vars = {"r_max", "z_max", "t_max", "b_max", "w_max", "r", "z", "t"};
  prog.output_var = "Y";
  prog.entry = "fits_device";

  auto decision = [&](const char* id, const char* cond, const char* yes, const char* no) {
    prog.nodes.emplace(id, DecisionNode{parse_condition(cond), yes, no});
  };
  auto blocks = [&](const char* id, const char* expr, const char* next) {
    prog.nodes.emplace(id, ProcessNode{{Assignment{"B_active", parse_arithmetic(expr), std::nullopt}}, next});
  };
  auto ratio = [&](const char* id) {
    prog.nodes.emplace(id, TerminalNode{parse_arithmetic("min(floor(B_active*t/32), w_max)/w_max")});
  };

  decision("fits_device", "t <= t_max", "block_limited", "fail");
  decision("block_limited", "t*b_max <= 32*w_max and r*t*b_max <= r_max and z*b_max <= z_max",
           "set_block_limit", "warp_limited");
  decision("warp_limited", "32*w_max <= t*b_max and 32*w_max*r <= r_max and 32*w_max*z <= z_max*t",
           "set_warp_limit", "register_limited");
  decision("register_limited", "r_max <= r*t*b_max and r_max <= r*32*w_max and r_max*z <= r*t*z_max",
           "set_register_limit", "shared_limited");
  decision("shared_limited", "z_max <= b_max*z and z_max*t <= 32*w_max*z and z_max*r*t <= z*r_max",
           "set_shared_limit", "fail");

  blocks("set_block_limit", "b_max", "occupancy_block");
  blocks("set_warp_limit", "floor(32*w_max/t)", "occupancy_warp");
  blocks("set_register_limit", "floor(r_max/(r*t))", "occupancy_register");
  blocks("set_shared_limit", "floor(z_max/z)", "occupancy_shared");

  ratio("occupancy_block");
  ratio("occupancy_warp");
  ratio("occupancy_register");
  ratio("occupancy_shared");
  prog.nodes.emplace("fail", TerminalNode{Expr::constant(0)});
  return prog;
}

Valuation program_inputs(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads) {
  return {{"r_max", spec.r_max}, {"z_max", spec.z_max}, {"t_max", spec.t_max}, {"b_max", spec.b_max},
          {"w_max", spec.w_max}, {"r", usage.r},         {"z", usage.z},         {"t", threads}};
}

}  // namespace occupancy

}  // namespace ratprog
