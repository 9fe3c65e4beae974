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

#include "dynshadow/records.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace dynshadow {

void write_shot_records_csv(std::ostream& out, ShotRecordStream& records,
                            const std::vector<std::string>& clbit_labels) {
  std::vector<size_t> columns;
  out << "shot";
  for (size_t i = 0; i < clbit_labels.size(); ++i) {
    if (clbit_labels[i].empty()) continue;
    columns.push_back(i);
    out << ',' << clbit_labels[i];
  }
  out << '\n';
  ShotRecord rec;
  uint64_t shot = 0;
  while (records.next(rec)) {
    out << shot;
    for (size_t i : columns) {
      out << ',' << (i < rec.values.size() && rec.values[i] ? '1' : '0');
    }
    out << '\n';
    ++shot;
  }
}

void write_snapshots_csv(std::ostream& out, SnapshotStream& snaps) {
  out << "shot,basis,outcomes\n";
  Snapshot s;
  uint64_t shot = 0;
  std::string outcomes;
  while (snaps.next(s)) {
    outcomes.clear();
    for (int8_t m : s.mu) {
      outcomes.push_back(m > 0 ? '0' : '1');
    }
    out << shot << ',' << s.basis.to_word() << ',' << outcomes << '\n';
    ++shot;
  }
}

SnapshotCsvReader::SnapshotCsvReader(std::istream& in) : in_(in) {
  std::string header;
  if (!std::getline(in_, header)) {
    throw std::invalid_argument("snapshot CSV: empty input");
  }
  ++line_no_;
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header != "shot,basis,outcomes") {
    throw std::invalid_argument("snapshot CSV: expected header 'shot,basis,outcomes'");
  }
}

bool SnapshotCsvReader::next(Snapshot& out) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto c1 = line.find(',');
    auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw std::invalid_argument("snapshot CSV line " + std::to_string(line_no_) +
                                  ": expected 'shot,basis,outcomes'");
    }
    std::string basis_word = line.substr(c1 + 1, c2 - c1 - 1);
    std::string outcome_bits = line.substr(c2 + 1);
    if (basis_word.size() != outcome_bits.size()) {
      throw std::invalid_argument("snapshot CSV line " + std::to_string(line_no_) +
                                  ": basis and outcomes lengths differ");
    }
    BasisVector basis;
    try {
      basis = BasisVector::from_word(basis_word);
    } catch (const std::exception& e) {
      throw std::invalid_argument("snapshot CSV line " + std::to_string(line_no_) + ": " +
                                  e.what());
    }
    std::vector<int8_t> mu;
    mu.reserve(outcome_bits.size());
    for (char c : outcome_bits) {
      if (c == '0') {
        mu.push_back(1);
      } else if (c == '1') {
        mu.push_back(-1);
      } else {
        throw std::invalid_argument("snapshot CSV line " + std::to_string(line_no_) +
                                    ": outcomes must be 0/1");
      }
    }
    out.basis = std::move(basis);
    out.mu = std::move(mu);
    return true;
  }
  return false;
}

ShotRecordCsvReader::ShotRecordCsvReader(std::istream& in) : in_(in) {
  std::string header;
  if (!std::getline(in_, header)) {
    throw std::invalid_argument("record CSV: empty input");
  }
  ++line_no_;
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header.substr(0, 5) != "shot," || header.size() == 5) {
    throw std::invalid_argument("record CSV: expected header 'shot,<label>,...'");
  }
  size_t start = 5;
  while (start <= header.size()) {
    size_t comma = header.find(',', start);
    size_t end = comma == std::string::npos ? header.size() : comma;
    if (end == start) {
      throw std::invalid_argument("record CSV: empty column label");
    }
    labels_.push_back(header.substr(start, end - start));
    start = end + 1;
  }
}

bool ShotRecordCsvReader::next(ShotRecord& out) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fail = [this](const char* msg) {
      throw std::invalid_argument("record CSV line " + std::to_string(line_no_) + ": " + msg);
    };
    size_t comma = line.find(',');
    if (comma == std::string::npos) fail("expected 'shot,<bit>,...'");
    out.values.clear();
    out.values.reserve(labels_.size());
    size_t start = comma + 1;
    while (start <= line.size()) {
      size_t next = line.find(',', start);
      size_t end = next == std::string::npos ? line.size() : next;
      if (end != start + 1 || (line[start] != '0' && line[start] != '1')) {
        fail("bit values must be 0 or 1");
      }
      out.values.push_back(line[start] == '1' ? 1 : 0);
      start = end + 1;
    }
    if (out.values.size() != labels_.size()) fail("wrong number of columns");
    return true;
  }
  return false;
}

}  // namespace dynshadow
