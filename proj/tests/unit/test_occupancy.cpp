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

#include <doctest.h>

#include "ratprog/errors.hpp"
#include "ratprog/ir.hpp"
#include "ratprog/occupancy.hpp"
#include "test_support.hpp"

using namespace ratprog;
using namespace ratprog::occupancy;

namespace {

// w_max=64, b_max=32, r_max=65536, z_max=12288, t_max=1024
const DeviceSpec kRef{};

DeviceSpec random_spec(Rng& rng) {
  DeviceSpec s;
  s.r_max = 1 + static_cast<std::int64_t>(rng.below(1 << 17));
  s.z_max = 1 + static_cast<std::int64_t>(rng.below(1 << 16));
  s.t_max = 32 * (1 + static_cast<std::int64_t>(rng.below(64)));
  s.b_max = 1 + static_cast<std::int64_t>(rng.below(64));
  s.w_max = 1 + static_cast<std::int64_t>(rng.below(128));
  return s;
}

}  // namespace

TEST_CASE("active_blocks examples") {
  CHECK(active_blocks(kRef, {32, 0}, 256) == 8);
  CHECK(limiting_branch(kRef, {32, 0}, 256) == 2);
  CHECK(active_blocks(kRef, {64, 0}, 32) == 32);
  CHECK(limiting_branch(kRef, {64, 0}, 32) == 1);
  CHECK(active_blocks(kRef, {1, 12289}, 32) == 0);
  CHECK(limiting_branch(kRef, {1, 12289}, 32) == 4);
}

TEST_CASE("active_warps examples") {
  CHECK(active_warps(kRef, {32, 0}, 256) == 64);
  CHECK(active_warps(kRef, {64, 0}, 32) == 32);
  CHECK(active_warps(kRef, {1, 12289}, 32) == 0);
}

TEST_CASE("occupancy_ratio examples") {
  CHECK(occupancy_ratio(kRef, {32, 0}, 256) == 1);
  CHECK(occupancy_ratio(kRef, {64, 0}, 32) == Rational(1, 2));
  CHECK(occupancy_ratio(kRef, {256, 0}, 128) == Rational(1, 8));
  CHECK(active_blocks(kRef, {256, 0}, 128) == 2);
  CHECK(limiting_branch(kRef, {256, 0}, 128) == 3);
}

TEST_CASE("guards") {
  CHECK(active_blocks(kRef, {1, 0}, 1025) == 0);
  CHECK(limiting_branch(kRef, {1, 0}, 1025) == 0);
  CHECK_THROWS_AS(active_blocks(kRef, {1, 0}, 0), DomainError);
  CHECK_THROWS_AS(active_blocks(kRef, {-1, 0}, 32), DomainError);
  DeviceSpec odd = kRef;
  odd.t_max = 1000;
  CHECK_THROWS_AS(odd.check(), ValidationError);
}

TEST_CASE("program structure") {
  auto prog = build_occupancy_program();
  CHECK(prog.input_vars.size() == 8);
  CHECK(terminal_count(prog) == 5);
  CHECK(validate(prog).empty());
  CHECK(evaluate(prog, program_inputs(kRef, {32, 0}, 256)) == 1);
}

TEST_CASE("min-formula oracle agreement") {
  Rng rng(2024);
  for (int i = 0; i < 20000; ++i) {
    DeviceSpec s = random_spec(rng);
    KernelResourceUsage u{static_cast<std::int64_t>(rng.below(256)), static_cast<std::int64_t>(rng.below(1 << 15))};
    std::int64_t t = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(s.t_max)));
    REQUIRE(active_blocks(s, u, t) == testing::min_formula_blocks(s, u, t));
  }
}

TEST_CASE("native and program agree exactly") {
  Rng rng(77);
  auto prog = build_occupancy_program();
  for (int i = 0; i < 2000; ++i) {
    DeviceSpec s = random_spec(rng);
    KernelResourceUsage u{static_cast<std::int64_t>(rng.below(128)), static_cast<std::int64_t>(rng.below(1 << 14))};
    std::int64_t t = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(s.t_max) + 64));
    REQUIRE(evaluate(prog, program_inputs(s, u, t)) == occupancy_ratio(s, u, t));
  }
}

TEST_CASE("monotone in resource usage and bounded") {
  Rng rng(5);
  for (int i = 0; i < 3000; ++i) {
    DeviceSpec s = random_spec(rng);
    std::int64_t t = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(s.t_max)));
    KernelResourceUsage u{static_cast<std::int64_t>(rng.below(128)), static_cast<std::int64_t>(rng.below(1 << 14))};
    KernelResourceUsage more_r{u.r + 1 + static_cast<std::int64_t>(rng.below(8)), u.z};
    KernelResourceUsage more_z{u.r, u.z + 1 + static_cast<std::int64_t>(rng.below(64))};
    CHECK(active_blocks(s, more_r, t) <= active_blocks(s, u, t));
    CHECK(active_blocks(s, more_z, t) <= active_blocks(s, u, t));
    Rational occ = occupancy_ratio(s, u, t);
    CHECK(occ >= 0);
    CHECK(occ <= 1);
  }
}

TEST_CASE("failure exit is not reached for positive inputs") {
  Rng rng(6);
  for (int i = 0; i < 20000; ++i) {
    DeviceSpec s = random_spec(rng);
    KernelResourceUsage u{1 + static_cast<std::int64_t>(rng.below(128)), 1 + static_cast<std::int64_t>(rng.below(1 << 14))};
    std::int64_t t = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(s.t_max)));
    REQUIRE(limiting_branch(s, u, t) != 5);
  }
}

TEST_CASE("device documents") {
  DeviceSpec s = kRef;
  s.extras["sm_count"] = 80;
  s.extras["clock"] = Rational(3, 2);
  auto back = device_from_json(device_to_json(s));
  CHECK(back.r_max == s.r_max);
  CHECK(back.extras == s.extras);
  CHECK(back.attributes().at("w_max") == 64);
  CHECK_THROWS_AS(device_from_json(nlohmann::json::parse(R"({"r_max": 1})")), SchemaError);
  CHECK_THROWS_AS(device_from_json(nlohmann::json::parse(
                      R"({"r_max": 0, "z_max": 1, "t_max": 32, "b_max": 1, "w_max": 1})")),
                  ValidationError);
}
