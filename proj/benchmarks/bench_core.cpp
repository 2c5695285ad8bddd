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

#include "qheat/dynamics.hpp"
#include "qheat/fluctuations.hpp"
#include "qheat/probe_sim.hpp"
#include "qheat/scan/ensemble.hpp"
#include "qheat/states.hpp"

namespace {

using namespace qheat;

scan::Instance instance(int d) {
  scan::Rng rng(static_cast<std::uint64_t>(d) * 7919);
  return scan::random_instance(rng, d);
}

void BM_MhDistribution(benchmark::State& state) {
  const scan::Instance inst = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mh_distribution(inst.sys, inst.u));
}
BENCHMARK(BM_MhDistribution)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

void BM_TpmDistribution(benchmark::State& state) {
  const scan::Instance inst = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tpm_distribution(inst.sys, inst.u));
}
BENCHMARK(BM_TpmDistribution)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

void BM_XftLhs(benchmark::State& state) {
  const scan::Instance inst = instance(static_cast<int>(state.range(0)));
  const TransitionTable mh = mh_distribution(inst.sys, inst.u);
  for (auto _ : state) benchmark::DoNotOptimize(xft_lhs(mh, inst.sys, inst.u));
}
BENCHMARK(BM_XftLhs)->Arg(2)->Arg(3)->Arg(4);

void BM_JTerm(benchmark::State& state) {
  const scan::Instance inst = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(j_term(inst.sys, inst.u));
}
BENCHMARK(BM_JTerm)->Arg(2)->Arg(3)->Arg(4);

void BM_MinPtEigenvalue(benchmark::State& state) {
  const scan::Instance inst = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(min_pt_eigenvalue(inst.sys));
}
BENCHMARK(BM_MinPtEigenvalue)->Arg(2)->Arg(3)->Arg(4);

void BM_ExperimentUnitary(benchmark::State& state) {
  double t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(experiment_unitary(215.1, t, 1.0));
    t += 1e-6;
  }
}
BENCHMARK(BM_ExperimentUnitary);

void BM_QuditEnergyPreserving(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  scan::Rng rng(5);
  const EnergySpectrum spectrum = scan::random_spectrum(rng, d);
  const auto rotations = scan::random_rotations(rng, d);
  for (auto _ : state) benchmark::DoNotOptimize(qudit_energy_preserving(spectrum, rotations));
}
BENCHMARK(BM_QuditEnergyPreserving)->Arg(2)->Arg(3)->Arg(4);

void BM_ProbeStatistics(benchmark::State& state) {
  const scan::Instance inst = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(probe_statistics(inst.sys, inst.u, 0, 1, 0.2));
}
BENCHMARK(BM_ProbeStatistics)->Arg(2)->Arg(3);

void BM_SampledReconstruction(benchmark::State& state) {
  const scan::Instance inst = instance(2);
  const ProbeOutcomeStats stats = probe_statistics(inst.sys, inst.u, 0, 1, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(sampled_reconstruction(stats, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_SampledReconstruction)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
