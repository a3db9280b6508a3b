// Copyright 2026 The teleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "teleport/circuits.hpp"
#include "teleport/fidelity.hpp"

namespace teleport {
namespace {

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_SizeTrace1D(benchmark::State& state) {
  SizeTraceSpec spec;
  spec.circuit = {1, 512, 1, 512, Boundary::open, 1};
  spec.seed_blocks = {{256}};
  spec.realizations = 16;
  spec.stride = 32;
  for (auto _ : state) benchmark::DoNotOptimize(size_trace(spec, exec_of(state)));
}
BENCHMARK(BM_SizeTrace1D)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SizeTrace0D(benchmark::State& state) {
  SizeTraceSpec spec;
  spec.circuit = {0, 1000000, 1, 14, Boundary::open, 2};
  spec.seed_blocks = consecutive_blocks(101, 1);
  spec.realizations = 4;
  for (auto _ : state) benchmark::DoNotOptimize(size_trace(spec, exec_of(state)));
}
BENCHMARK(BM_SizeTrace0D)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MarginalScan(benchmark::State& state) {
  TeleportSpec spec;
  spec.circuit = {0, 100000, 1, 12, Boundary::open, 3};
  spec.blocks = consecutive_blocks(21, 8);
  spec.subsystem = {SelectionKind::random, 1000, 0};
  spec.realizations = 4;
  const std::vector<double> gs = {5, 10, 20, 40, 80};
  for (auto _ : state)
    benchmark::DoNotOptimize(marginal_fidelity_scan(spec, {1, 4, 8}, 0, 20, {8, 10, 12}, gs, exec_of(state)));
}
BENCHMARK(BM_MarginalScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace teleport

BENCHMARK_MAIN();
