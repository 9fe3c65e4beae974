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

#ifndef DYNSHADOW_RECORDS_HPP
#define DYNSHADOW_RECORDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynshadow/circuit.hpp"
#include "dynshadow/pauli.hpp"

namespace dynshadow {

/// Final classical register contents of one shot, indexed by clbit.
struct ShotRecord {
  std::vector<uint8_t> values;

  bool operator==(const ShotRecord&) const = default;
};

struct RunConfig {
  uint64_t shots = 1;
  uint64_t seed = 0;
  std::optional<ReadoutErrorModel> readout_error;
};

/// Pull-based shot source. Implementations produce records lazily so runs of
/// millions of shots never materialize in memory.
class ShotRecordStream {
 public:
  virtual ~ShotRecordStream() = default;

  /// Fills `out` and returns true, or returns false when exhausted.
  virtual bool next(ShotRecord& out) = 0;
};

/// One classical-shadow sample: the measurement basis drawn for every qubit
/// and the eigenvalue sign (+1 for outcome 0, -1 for outcome 1) observed.
struct Snapshot {
  BasisVector basis;
  std::vector<int8_t> mu;

  bool operator==(const Snapshot&) const = default;
};

class SnapshotStream {
 public:
  virtual ~SnapshotStream() = default;
  virtual bool next(Snapshot& out) = 0;
};

class VectorSnapshotStream final : public SnapshotStream {
 public:
  explicit VectorSnapshotStream(std::vector<Snapshot> snaps)
      : snaps_(std::move(snaps)) {}
  bool next(Snapshot& out) override {
    if (pos_ >= snaps_.size()) return false;
    out = snaps_[pos_++];
    return true;
  }

 private:
  std::vector<Snapshot> snaps_;
  size_t pos_ = 0;
};

/// CSV with header "shot,<label>,..." listing every labeled clbit in index
/// order; unlabeled bits are omitted. One row per shot.
void write_shot_records_csv(std::ostream& out, ShotRecordStream& records,
                            const std::vector<std::string>& clbit_labels);

/// CSV with header "shot,basis,outcomes"; basis is a Pauli word ("XYZ..."),
/// outcomes the measured bits ("010..."), qubit 0 leftmost in both.
void write_snapshots_csv(std::ostream& out, SnapshotStream& snaps);

/// Streaming reader for the snapshot CSV format written above.
/// Throws std::invalid_argument on malformed rows.
class SnapshotCsvReader final : public SnapshotStream {
 public:
  explicit SnapshotCsvReader(std::istream& in);
  bool next(Snapshot& out) override;

 private:
  std::istream& in_;
  size_t line_no_ = 0;
};

/// Streaming reader for the shot-record CSV format written above. Records
/// come back indexed by column, in the order `labels()` lists them; with a
/// fully labeled circuit that order is the original clbit order.
/// Throws std::invalid_argument on malformed rows.
class ShotRecordCsvReader final : public ShotRecordStream {
 public:
  explicit ShotRecordCsvReader(std::istream& in);
  bool next(ShotRecord& out) override;

  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::istream& in_;
  std::vector<std::string> labels_;
  size_t line_no_ = 0;
};

}  // namespace dynshadow

#endif  // DYNSHADOW_RECORDS_HPP
