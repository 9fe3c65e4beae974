// Copyright 2026 The dynshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "dynshadow/estimator.hpp"
#include "dynshadow/circuit_io.hpp"
#include "dynshadow/hybrid.hpp"
#include "dynshadow/rng.hpp"
#include "dynshadow/statevector.hpp"
#include "dynshadow/tableau.hpp"

namespace {

using namespace dynshadow;

void BM_TableauCliffordLayer(benchmark::State& state) {
  const uint32_t n = static_cast<uint32_t>(state.range(0));
  Tableau tab(n);
  for (auto _ : state) {
    for (uint32_t q = 0; q < n; ++q) tab.apply_h(q);
    for (uint32_t q = 0; q + 1 < n; ++q) tab.apply_cx(q, q + 1);
    for (uint32_t q = 0; q < n; ++q) tab.apply_s(q);
  }
  state.SetItemsProcessed(state.iterations() * (3 * n - 1));
}
BENCHMARK(BM_TableauCliffordLayer)->Arg(16)->Arg(64)->Arg(256);

void BM_TableauMeasureCycle(benchmark::State& state) {
  const uint32_t n = static_cast<uint32_t>(state.range(0));
  Rng rng(7);
  Tableau tab(n);
  for (auto _ : state) {
    for (uint32_t q = 0; q < n; ++q) tab.apply_h(q);
    for (uint32_t q = 0; q < n; ++q) {
      benchmark::DoNotOptimize(tab.measure(q, rng));
    }
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TableauMeasureCycle)->Arg(16)->Arg(64);

void BM_HybridShadowFastPath(benchmark::State& state) {
  const uint32_t n = static_cast<uint32_t>(state.range(0));
  HybridShadowConfig cfg;
  cfg.n_qubits = n;
  cfg.prep = parse_gate_spec("x0", n);
  cfg.probs.assign(n, BasisProbabilities::uniform());
  cfg.shots = 1000;
  cfg.seed = 1;
  for (auto _ : state) {
    auto stream = run_hybrid_shadow(cfg);
    Snapshot s;
    while (stream->next(s)) benchmark::DoNotOptimize(s.mu.data());
  }
  state.SetItemsProcessed(state.iterations() * cfg.shots);
}
BENCHMARK(BM_HybridShadowFastPath)->Arg(8)->Arg(40)->Arg(128);

void BM_HybridShadowGeneralPath(benchmark::State& state) {
  const uint32_t n = static_cast<uint32_t>(state.range(0));
  HybridShadowConfig cfg;
  cfg.n_qubits = n;
  cfg.prep = parse_gate_spec("x0", n);
  cfg.probs.assign(n, BasisProbabilities::uniform());
  cfg.shots = 1000;
  cfg.seed = 1;
  cfg.disable_fast_path = true;
  for (auto _ : state) {
    auto stream = run_hybrid_shadow(cfg);
    Snapshot s;
    while (stream->next(s)) benchmark::DoNotOptimize(s.mu.data());
  }
  state.SetItemsProcessed(state.iterations() * cfg.shots);
}
BENCHMARK(BM_HybridShadowGeneralPath)->Arg(8)->Arg(40);

void BM_StatevectorDynamicShot(benchmark::State& state) {
  const uint32_t n = static_cast<uint32_t>(state.range(0));
  auto c = build_random_pauli_circuit(
      n, parse_gate_spec("x0", n),
      std::vector<BasisProbabilities>(n, BasisProbabilities::uniform()));
  RunConfig cfg;
  cfg.shots = 100;
  cfg.seed = 3;
  for (auto _ : state) {
    auto stream = run_statevector(c, cfg);
    ShotRecord rec;
    while (stream->next(rec)) benchmark::DoNotOptimize(rec.values.data());
  }
  state.SetItemsProcessed(state.iterations() * cfg.shots);
}
BENCHMARK(BM_StatevectorDynamicShot)->Arg(2)->Arg(6)->Arg(10);

void BM_EstimatorSnapshotValue(benchmark::State& state) {
  const uint32_t n = static_cast<uint32_t>(state.range(0));
  HybridShadowConfig cfg;
  cfg.n_qubits = n;
  cfg.probs.assign(n, BasisProbabilities::uniform());
  cfg.shots = 10000;
  cfg.seed = 5;
  std::vector<Snapshot> snaps;
  {
    auto stream = run_hybrid_shadow(cfg);
    Snapshot s;
    while (stream->next(s)) snaps.push_back(s);
  }
  std::vector<PauliString::Letter> letters;
  for (uint32_t q = 0; q < n; q += 2) letters.push_back({q, PauliAxis::Z});
  PauliString obs(n, std::move(letters));
  EstimatorConfig est;
  for (auto _ : state) {
    double acc = 0.0;
    for (const Snapshot& s : snaps) acc += single_snapshot_value(s, obs, est);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * snaps.size());
}
BENCHMARK(BM_EstimatorSnapshotValue)->Arg(8)->Arg(24);

void BM_AccumulatorAdd(benchmark::State& state) {
  Rng rng(9);
  std::vector<double> values(100000);
  for (auto& v : values) v = rng.next_unit() * 6.0 - 3.0;
  for (auto _ : state) {
    ShadowAccumulator acc;
    for (double v : values) acc.add(v);
    benchmark::DoNotOptimize(acc.mean());
  }
  state.SetItemsProcessed(state.iterations() * values.size());
}
BENCHMARK(BM_AccumulatorAdd);

}  // namespace

BENCHMARK_MAIN();
