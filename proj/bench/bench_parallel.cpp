/* Copyright 2026 The LICS Pulse Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Serial reference path (jobs = 1) against the OpenMP worker pool for the
// three parallel kernels: Gaussian baseline grid search, sin-cos duration
// sweep, and multi-start optimization.

#include <benchmark/benchmark.h>

#include <algorithm>

#include "lics/experiments.hpp"
#include "lics/optimizer.hpp"
#include "lics/parallel.hpp"

namespace {

lics::SystemConfig config() {
  lics::SystemConfig c;
  c.R = 0.25;
  c.detuning_mode = lics::DetuningMode::DynamicStark;
  return c;
}

lics::BaselineOptions reduced_baseline() {
  lics::BaselineOptions o;
  o.width_first = 0.5;
  o.width_last = 5.0;
  o.width_step = 0.5;
  o.ratio_step = 0.1;
  return o;
}

void BM_BaselineSearch(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lics::gaussian_baseline_search(config(), reduced_baseline(), jobs));
  }
}

void BM_SincosSweep(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  const auto durations = lics::linear_grid(0.05, 20.0, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lics::sincos_sweep(config(), durations, 200, jobs));
  }
}

void BM_MultiStart(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  const auto starts = lics::default_starts(1.0, 2.0, 200);
  lics::OptimizerOptions o;
  o.record_history = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lics::optimize(config(), 2.0, 200, starts, o, jobs));
  }
}

void job_counts(benchmark::internal::Benchmark* b) {
  // Always exercise the pool, even on a single-core host.
  b->Arg(1);
  b->Arg(std::max(lics::available_jobs(), 2));
  b->ArgName("jobs")->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_BaselineSearch)->Apply(job_counts);
BENCHMARK(BM_SincosSweep)->Apply(job_counts);
BENCHMARK(BM_MultiStart)->Apply(job_counts);

BENCHMARK_MAIN();
