// Copyright 2026 The lmg-bench Authors
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

#include "lmg/bethe.hpp"
#include "lmg/circuit.hpp"
#include "lmg/ego.hpp"
#include "lmg/model.hpp"
#include "lmg/simulator.hpp"
#include "lmg/vqe.hpp"

namespace {

void BM_BetheGroundSector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lmg::ModelParams p = lmg::make_params(n, 0.75, 0.5);
  const lmg::SectorConfig c = lmg::sector_for_parity(n, 0);
  for (auto _ : state) benchmark::DoNotOptimize(lmg::solve_bethe(c, p));
}
BENCHMARK(BM_BetheGroundSector)->Arg(7)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_RunCircuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto mode = state.range(1) ? lmg::DepthMode::kLog : lmg::DepthMode::kLinear;
  const lmg::ModelParams p = lmg::make_params(n, 0.75, 0.5);
  const lmg::SectorConfig c = lmg::sector_for_parity(n, 0);
  const auto target = lmg::encode(lmg::exact_spectrum(p).front().state, c);
  const lmg::Circuit circ = lmg::build_circuit(lmg::angles_for(target, mode));
  for (auto _ : state) benchmark::DoNotOptimize(lmg::run(circ));
}
BENCHMARK(BM_RunCircuit)->Args({20, 0})->Args({20, 1})->Args({60, 0})->Args({60, 1});

void BM_SampledEnergy(benchmark::State& state) {
  const lmg::ModelParams p = lmg::make_params(7, 0.75, 0.5);
  const lmg::SectorConfig c{3, 1, 0};
  const auto target = lmg::encode(lmg::sector_spectrum(p, c).front().state, c);
  const auto psi = lmg::StateVector::from_one_hot(target);
  const auto groups = lmg::pauli_groups(c, p);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lmg::sampled_expectation(psi, groups, state.range(0), ++seed));
  }
}
BENCHMARK(BM_SampledEnergy)->Arg(1000)->Arg(1000000);

void BM_VqeN7(benchmark::State& state) {
  const lmg::ModelParams p = lmg::make_params(7, 0.75, 0.5);
  lmg::VqeOptions opts;
  opts.threads = 1;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lmg::optimize({3, 1, 0}, p, opts));
}
BENCHMARK(BM_VqeN7)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
