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

#include "dynshadow/bench.hpp"

#include <chrono>
#include <stdexcept>

#include "dynshadow/estimator.hpp"
#include "dynshadow/rng.hpp"

namespace dynshadow {

double modeled_time(const CompileCostModel& m, uint64_t circuits_compiled, uint64_t shots) {
  return static_cast<double>(circuits_compiled) * m.compile_seconds +
         static_cast<double>(shots) * m.per_shot_seconds;
}

double modeled_throughput_ratio(const CompileCostModel& m) {
  if (!(m.per_shot_seconds > 0.0)) {
    throw std::invalid_argument("per-shot cost must be positive");
  }
  return (m.compile_seconds + m.per_shot_seconds) / m.per_shot_seconds;
}

namespace {

std::vector<BasisProbabilities> effective_probs(const BenchConfig& cfg) {
  if (cfg.shots == 0) {
    throw std::invalid_argument("bench needs at least one shot");
  }
  if (cfg.probs.empty()) {
    return std::vector<BasisProbabilities>(cfg.n_qubits, BasisProbabilities::uniform());
  }
  if (cfg.probs.size() != cfg.n_qubits) {
    throw std::invalid_argument("need one basis distribution per qubit");
  }
  return cfg.probs;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

BenchReport run_dynamic_bench(const BenchConfig& cfg, const SnapshotSink& sink) {
  auto probs = effective_probs(cfg);
  auto start = Clock::now();

  DynamicCircuit circuit = build_random_pauli_circuit(cfg.n_qubits, cfg.prep, probs);
  auto problems = validate_circuit(circuit);
  if (!problems.empty()) {
    throw std::runtime_error("generated circuit failed validation: " + problems.front());
  }
  ShadowBitLayout layout = ShadowBitLayout::from_labels(circuit.clbit_labels);

  RunConfig run{cfg.shots, cfg.seed, std::nullopt};
  auto records = run_statevector(circuit, run);
  ShotRecord rec;
  uint64_t produced = 0;
  while (records->next(rec)) {
    ++produced;
    if (sink) sink(snapshot_from_shot_record(rec, layout));
  }

  BenchReport r;
  r.mode = "dynamic";
  r.circuits_compiled = 1;
  r.total_shots = produced;
  r.wall_seconds = seconds_since(start);
  r.modeled_seconds = modeled_time(cfg.cost, r.circuits_compiled, r.total_shots);
  r.speedup_vs_static =
      modeled_time(cfg.cost, r.total_shots, r.total_shots) / r.modeled_seconds;
  return r;
}

BenchReport run_static_bench(const BenchConfig& cfg, const SnapshotSink& sink) {
  auto probs = effective_probs(cfg);
  auto start = Clock::now();

  uint64_t compiled = 0;
  std::vector<PauliAxis> axes(cfg.n_qubits);
  Snapshot snap;
  ShotRecord rec;
  for (uint64_t shot = 0; shot < cfg.shots; ++shot) {
    Rng rng(cfg.seed, shot);
    for (uint32_t q = 0; q < cfg.n_qubits; ++q) {
      double u = rng.next_unit();
      const BasisProbabilities& p = probs[q];
      axes[q] = u < p.p_x ? PauliAxis::X
                          : (u < p.p_x + p.p_y ? PauliAxis::Y : PauliAxis::Z);
    }
    DynamicCircuit circuit = build_static_shadow_circuit(BasisVector(axes), cfg.prep);
    auto problems = validate_circuit(circuit);
    if (!problems.empty()) {
      throw std::runtime_error("generated circuit failed validation: " + problems.front());
    }
    ++compiled;

    RunConfig run{1, rng.next_u64(), std::nullopt};
    auto records = run_statevector(circuit, run);
    while (records->next(rec)) {
      if (sink) {
        snap.basis = BasisVector(axes);
        snap.mu.resize(cfg.n_qubits);
        for (uint32_t q = 0; q < cfg.n_qubits; ++q) {
          snap.mu[q] = rec.values[q] ? -1 : 1;
        }
        sink(snap);
      }
    }
  }

  BenchReport r;
  r.mode = "static";
  r.circuits_compiled = compiled;
  r.total_shots = cfg.shots;
  r.wall_seconds = seconds_since(start);
  r.modeled_seconds = modeled_time(cfg.cost, r.circuits_compiled, r.total_shots);
  return r;
}

BenchComparison run_bench_comparison(const BenchConfig& cfg) {
  BenchComparison cmp;
  cmp.dynamic_mode = run_dynamic_bench(cfg);
  cmp.static_mode = run_static_bench(cfg);
  cmp.modeled_speedup = cmp.static_mode.modeled_seconds / cmp.dynamic_mode.modeled_seconds;
  cmp.throughput_ratio = modeled_throughput_ratio(cfg.cost);
  return cmp;
}

}  // namespace dynshadow
