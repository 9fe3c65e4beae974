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

#ifndef DYNSHADOW_BENCH_HPP
#define DYNSHADOW_BENCH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dynshadow/circuit.hpp"
#include "dynshadow/records.hpp"
#include "dynshadow/statevector.hpp"

namespace dynshadow {

/// Linear cost model for hardware execution: a fixed compilation cost per
/// submitted circuit plus a per-shot sampling cost.
struct CompileCostModel {
  double compile_seconds = 0.0;
  double per_shot_seconds = 0.0;
};

/// Calibration from cloud-hosted superconducting hardware, where compiling
/// and queueing one circuit takes on the order of 5.4 s while each shot of
/// an already-loaded circuit streams at 0.4 ms.
inline constexpr CompileCostModel kCloudCalibratedCost{5.4, 4.0e-4};

double modeled_time(const CompileCostModel& m, uint64_t circuits_compiled, uint64_t shots);

/// Sustained sampling-rate advantage of compiling once: the per-shot wall
/// time of compile-per-shot execution (compile + shot) over the per-shot
/// wall time of a single compiled circuit (shot alone).
double modeled_throughput_ratio(const CompileCostModel& m);

struct BenchConfig {
  uint32_t n_qubits = 1;
  std::vector<Gate> prep;
  std::vector<BasisProbabilities> probs;  // empty = uniform on every qubit
  uint64_t shots = 0;
  uint64_t seed = 0;
  CompileCostModel cost = kCloudCalibratedCost;
};

struct BenchReport {
  std::string mode;
  uint64_t circuits_compiled = 0;
  uint64_t total_shots = 0;
  double wall_seconds = 0.0;
  double modeled_seconds = 0.0;
  /// Modeled time of compile-per-shot execution at this shot count over this
  /// report's modeled time; 1.0 for the static mode itself.
  double speedup_vs_static = 1.0;
};

using SnapshotSink = std::function<void(const Snapshot&)>;

/// Builds the randomized-measurement dynamic circuit once and samples all
/// shots from it on the statevector backend. circuits_compiled is always 1.
BenchReport run_dynamic_bench(const BenchConfig& cfg, const SnapshotSink& sink = {});

/// Compile-per-shot strategy: draws each shot's basis in software, builds a
/// fresh static circuit for it, and runs one shot. circuits_compiled equals
/// the shot count. The snapshot distribution matches the dynamic mode.
BenchReport run_static_bench(const BenchConfig& cfg, const SnapshotSink& sink = {});

struct BenchComparison {
  BenchReport dynamic_mode;
  BenchReport static_mode;
  double modeled_speedup = 0.0;  // static modeled time / dynamic modeled time
  double throughput_ratio = 0.0;
};

BenchComparison run_bench_comparison(const BenchConfig& cfg);

}  // namespace dynshadow

#endif  // DYNSHADOW_BENCH_HPP
