// Copyright 2026 The qheat Authors
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

#include "qheat/scan/ensemble.hpp"
#include "qheat/scan/evaluate.hpp"
#include "qheat/scan/properties.hpp"
#include "qheat/scan/sweep.hpp"

namespace {

using namespace qheat;

void BM_EvaluatePoint(benchmark::State& state) {
  scan::Rng rng(17);
  const scan::Instance inst = scan::random_instance(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan::evaluate_point(inst.sys, inst.u));
}
BENCHMARK(BM_EvaluatePoint)->Arg(2)->Arg(3);

void BM_QubitSweep(benchmark::State& state) {
  const scan::Config cfg = scan::Config::parse(
      "scenario = qubit-theta-eta\n"
      "sweep.axis1.name = unitary.theta\nsweep.axis1.min = 0\nsweep.axis1.max = pi\nsweep.axis1.n = 50\n"
      "sweep.axis2.name = state.eta\nsweep.axis2.min = -0.19\nsweep.axis2.max = 0.19\nsweep.axis2.n = 20\n");
  const scan::SweepSpec spec = scan::parse_sweep_spec(cfg);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan::run_sweep(spec, threads));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_QubitSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_PropertySuite(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(scan::run_property_suite(scan::kDefaultPropertySeed, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PropertySuite)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
