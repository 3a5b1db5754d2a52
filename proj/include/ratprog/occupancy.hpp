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
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "ratprog/program.hpp"
#include "ratprog/rational.hpp"

namespace ratprog {

/// Per-device limits. The five caps drive the occupancy flowchart; `extras`
/// carries any further named attributes performance models read
/// (sm_count, sm_clock_hz, ...).
struct DeviceSpec {
  std::int64_t r_max = 65536;  // registers per thread block
  std::int64_t z_max = 12288;  // shared-memory words per thread block
  std::int64_t t_max = 1024;   // threads per thread block
  std::int64_t b_max = 32;     // thread blocks per SM
  std::int64_t w_max = 64;     // warps per SM
  std::map<std::string, Rational> extras;

  void check() const;

  /// The five caps and every extra, keyed by name.
  Valuation attributes() const;
};

DeviceSpec device_from_json(const nlohmann::json& doc);
nlohmann::json device_to_json(const DeviceSpec& spec);

struct KernelResourceUsage {
  std::int64_t r = 0;  // registers per thread
  std::int64_t z = 0;  // shared-memory words per thread block
};

namespace occupancy {

inline constexpr std::int64_t kWarpSize = 32;

/// Resident thread blocks per SM for a block of `threads` threads. Zero when
/// the block exceeds the device cap or no block fits.
std::int64_t active_blocks(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads);

/// min(floor(active_blocks * threads / 32), w_max).
std::int64_t active_warps(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads);

/// active_warps / w_max, in [0, 1].
Rational occupancy_ratio(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads);

/// Which flowchart exit produced the block count: 1..4 for the four
/// limiters in order, 5 for the failure exit, 0 for the t_max guard.
int limiting_branch(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads);

/// The flowchart as a RationalProgram over
/// (r_max, z_max, t_max, b_max, w_max, r, z, t) computing the occupancy ratio.
RationalProgram build_occupancy_program();

/// Input valuation for build_occupancy_program().
Valuation program_inputs(const DeviceSpec& spec, const KernelResourceUsage& usage, std::int64_t threads);

}  // namespace occupancy

}  // namespace ratprog
