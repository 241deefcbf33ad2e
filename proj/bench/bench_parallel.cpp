// Copyright 2026 The evacshare Authors
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

#include "evacshare/exact.hpp"
#include "evacshare/experiment.hpp"

namespace {

using evacshare::ExactConfig;
using evacshare::GenConfig;

evacshare::Instance bench_instance() {
  GenConfig gen;
  // Slowest exact cell of the default sweep.
  gen.r_ratio = 0.6;
  gen.t_max = 9;
  return evacshare::generate_instance(gen);
}

// Argument: worker count; 1 is the serial reference search.
void BM_Exact(benchmark::State& state) {
  const evacshare::Instance inst = bench_instance();
  ExactConfig config;
  config.workers = static_cast<int>(state.range(0));
  std::int64_t nodes = 0;
  for (auto _ : state) {
    auto result = evacshare::solve_exact(inst, config);
    nodes = result.nodes;
    benchmark::DoNotOptimize(result.objective);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_Exact)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Sweep(benchmark::State& state) {
  evacshare::SweepConfig config;
  config.methods = {"heuristic", "exact"};
  config.ratios = {0.3, 0.5, 0.7};
  config.t_maxes = {5, 9, 13};
  config.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto report = evacshare::run_sweep(config);
    benchmark::DoNotOptimize(report.rows.data());
  }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
