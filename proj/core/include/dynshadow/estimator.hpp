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

#ifndef DYNSHADOW_ESTIMATOR_HPP
#define DYNSHADOW_ESTIMATOR_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynshadow/circuit.hpp"
#include "dynshadow/pauli.hpp"
#include "dynshadow/records.hpp"

namespace dynshadow {

/// Classical-bit positions of the three per-qubit registers in a shot
/// record produced by the randomized-measurement circuits.
struct ShadowBitLayout {
  std::vector<uint32_t> store_z;
  std::vector<uint32_t> store_xy;
  std::vector<uint32_t> result;

  uint32_t n_qubits() const { return static_cast<uint32_t>(result.size()); }

  /// The layout emitted by build_random_pauli_circuit: Store_Z[i] at i,
  /// Store_XY[i] at n+i, Result[i] at 2n+i.
  static ShadowBitLayout standard(uint32_t n_qubits);

  /// Recovers the layout from clbit labels; throws std::invalid_argument
  /// unless a complete triple exists for qubits 0..n-1.
  static ShadowBitLayout from_labels(const std::vector<std::string>& labels);
};

/// Decodes one shot: (Store_Z, Store_XY) = (0,0) -> X, (0,1) -> Y,
/// (1,*) -> Z; mu = +1 for Result bit 0, -1 for bit 1.
Snapshot snapshot_from_shot_record(const ShotRecord& record, const ShadowBitLayout& layout);

/// Adapts a record stream into snapshots on the fly.
class ShotSnapshotAdapter final : public SnapshotStream {
 public:
  ShotSnapshotAdapter(ShotRecordStream& records, ShadowBitLayout layout)
      : records_(records), layout_(std::move(layout)) {}
  bool next(Snapshot& out) override;

 private:
  ShotRecordStream& records_;
  ShadowBitLayout layout_;
  ShotRecord rec_;
};

enum class AggregatorKind { Mean, MedianOfMeans };

struct EstimatorConfig {
  /// Sampling weights per qubit; empty means uniform 1/3 everywhere. Must
  /// match the distributions the snapshots were drawn with for the estimate
  /// to stay unbiased.
  std::vector<BasisProbabilities> weights;

  /// When set, every estimate is multiplied by 1/(1-2e(i)) per support
  /// qubit, inverting independent readout flips in expectation.
  std::optional<ReadoutErrorModel> mitigation;

  AggregatorKind aggregator = AggregatorKind::Mean;
  uint32_t median_groups = 0;  // required >= 2 for MedianOfMeans
};

/// Product of 1/(1-2e(i)) over the support.
double mitigation_factor(const std::vector<uint32_t>& support, const ReadoutErrorModel& model);

/// The single-snapshot estimate of <Q>: zero unless every support letter of
/// Q matches the snapshot basis, otherwise the product over support qubits
/// of (inverse basis probability) * mu * (mitigation factor). The Hamiltonian
/// coefficient is applied by the callers, not here.
double single_snapshot_value(const Snapshot& s, const PauliString& q,
                             const EstimatorConfig& cfg);

/// Streaming count/sum/sum-of-squares with compensated addition, so results
/// are stable (to ~1e-13 relative) under any merge order.
class ShadowAccumulator {
 public:
  void add(double v);
  void merge(const ShadowAccumulator& other);

  uint64_t count() const { return count_; }
  double sum() const { return sum_ + sum_comp_; }
  double sum_squares() const { return sumsq_ + sumsq_comp_; }
  double mean() const;
  /// Unbiased sample variance; 0 below two samples.
  double variance() const;
  /// sqrt(variance / count); 0 below two samples.
  double std_err() const;

 private:
  double sum_ = 0.0, sum_comp_ = 0.0;
  double sumsq_ = 0.0, sumsq_comp_ = 0.0;
  uint64_t count_ = 0;
};

struct EstimateResult {
  double value = 0.0;
  double std_err = 0.0;
  uint64_t shots = 0;
};

/// Consumes the whole stream in one pass and O(1) memory (O(groups) for
/// median-of-means, where std_err is the spread of group means over
/// sqrt(groups)).
EstimateResult estimate_pauli(SnapshotStream& snaps, const PauliString& obs,
                              const EstimatorConfig& cfg);

/// Energy estimate: per snapshot sums coefficient * single_snapshot_value
/// over the terms, then aggregates. Memory is O(#terms), independent of the
/// shot count.
EstimateResult estimate_energy(SnapshotStream& snaps, const Hamiltonian& h,
                               const EstimatorConfig& cfg);

struct TraceRow {
  uint64_t shots = 0;
  double estimate = 0.0;
  double std_err = 0.0;
  std::optional<double> abs_error;
};

struct ConvergenceTrace {
  std::vector<TraceRow> rows;
  bool truncated = false;  // stream ended before the last checkpoint
};

/// Records the running estimate at each checkpoint (ascending shot counts).
/// With `reference` set, each row also carries |estimate - reference|.
ConvergenceTrace convergence_trace(SnapshotStream& snaps, const Hamiltonian& h,
                                   const EstimatorConfig& cfg,
                                   const std::vector<uint64_t>& checkpoints,
                                   std::optional<double> reference = std::nullopt);

/// CSV "shots,estimate,stderr" with an "abs_error" column when present.
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);

}  // namespace dynshadow

#endif  // DYNSHADOW_ESTIMATOR_HPP
