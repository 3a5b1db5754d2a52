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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "ratprog/kernels.hpp"
#include "ratprog/occupancy.hpp"
#include "ratprog/random.hpp"

using namespace ratprog;

namespace {

std::vector<SamplePoint> samples(std::size_t n) {
  Rng rng(1);
  std::vector<SamplePoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = {rng.uniform(32, 2048), rng.uniform(1, 1024), rng.uniform(1, 1024)};
    out.push_back({x, x[0] * x[0] / (x[1] * x[2]) + 16 * x[1]});
  }
  return out;
}

kernels::ScaledBasis basis() {
  const std::vector<unsigned> degrees = {2, 2, 2};
  return {monomial_basis(degrees), monomial_basis(degrees), {2048, 1024, 1024}, 1e6};
}

std::vector<Valuation> valuations(std::size_t n) {
  Rng rng(2);
  DeviceSpec spec;
  std::vector<Valuation> out;
  for (std::size_t i = 0; i < n; ++i) {
    KernelResourceUsage u{1 + static_cast<std::int64_t>(rng.below(255)),
                          static_cast<std::int64_t>(rng.below(1 << 15))};
    out.push_back(occupancy::program_inputs(spec, u, 1 + static_cast<std::int64_t>(rng.below(1024))));
  }
  return out;
}

std::vector<kernels::OccupancyQuery> queries(std::size_t n) {
  Rng rng(3);
  std::vector<kernels::OccupancyQuery> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({{1 + static_cast<std::int64_t>(rng.below(255)), static_cast<std::int64_t>(rng.below(1 << 15))},
                   1 + static_cast<std::int64_t>(rng.below(1024))});
  return out;
}

template <auto Kernel>
void BM_DesignMatrix(benchmark::State& state) {
  auto s = samples(static_cast<std::size_t>(state.range(0)));
  auto b = basis();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(s, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_Evaluate(benchmark::State& state) {
  auto prog = occupancy::build_occupancy_program();
  auto v = valuations(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(prog, v));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_ActiveBlocks(benchmark::State& state) {
  DeviceSpec spec;
  auto q = queries(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(spec, q));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_DesignMatrix<kernels::design_matrix_serial>)->Name("design_matrix/serial")->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_DesignMatrix<kernels::design_matrix_parallel>)->Name("design_matrix/parallel")->Arg(1 << 12)->Arg(1 << 16)->UseRealTime();
BENCHMARK(BM_Evaluate<kernels::evaluate_serial>)->Name("evaluate/serial")->Arg(1 << 10)->Arg(1 << 13);
BENCHMARK(BM_Evaluate<kernels::evaluate_parallel>)->Name("evaluate/parallel")->Arg(1 << 10)->Arg(1 << 13)->UseRealTime();
BENCHMARK(BM_ActiveBlocks<kernels::active_blocks_serial>)->Name("active_blocks/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_ActiveBlocks<kernels::active_blocks_parallel>)->Name("active_blocks/parallel")->Arg(1 << 16)->Arg(1 << 20)->UseRealTime();

BENCHMARK_MAIN();
