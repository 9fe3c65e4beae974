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

#ifndef DYNSHADOW_TABLEAU_HPP
#define DYNSHADOW_TABLEAU_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "dynshadow/circuit.hpp"
#include "dynshadow/records.hpp"
#include "dynshadow/rng.hpp"

namespace dynshadow {

/// Stabilizer state in binary symplectic form: n destabilizer rows, n
/// stabilizer rows, and one scratch row, with X/Z bits packed 64 per word.
/// Supports the Clifford gate set (everything except RY), Z measurement,
/// and Pauli expectation values. Memory and gate cost are O(n^2 / 64).
class Tableau {
 public:
  explicit Tableau(uint32_t n_qubits);

  uint32_t n_qubits() const { return n_; }

  /// Returns to |0...0>.
  void reset_identity();

  /// Throws std::invalid_argument for RY.
  void apply(const Gate& g);

  void apply_h(uint32_t q);
  void apply_s(uint32_t q);
  void apply_sdg(uint32_t q);
  void apply_x(uint32_t q);
  void apply_z(uint32_t q);
  void apply_cx(uint32_t control, uint32_t target);

  /// Z measurement. A random outcome consumes exactly one rng draw
  /// (a fair next_bool(0.5)); a deterministic outcome consumes none.
  bool measure(uint32_t qubit, Rng& rng);

  /// True when a Z measurement of `qubit` has a predetermined outcome,
  /// which is then written to *outcome.
  bool deterministic_z(uint32_t qubit, bool* outcome);

  /// Measure-and-restore-to-|0>: applies X when the outcome is 1.
  void reset(uint32_t qubit, Rng& rng);

  /// +1, -1, or 0 for a Pauli word on this register. Uses the scratch row.
  double pauli_expectation(const PauliString& p);

 private:
  bool x_bit(uint32_t row, uint32_t q) const;
  bool z_bit(uint32_t row, uint32_t q) const;
  void zero_row(uint32_t row);
  void copy_row(uint32_t dst, uint32_t src);
  // Multiplies row h by row i in place, tracking the sign.
  void row_mult(uint32_t h, uint32_t i);
  int sign_exponent(uint32_t h, uint32_t i) const;

  uint32_t n_;
  size_t words_;
  std::vector<uint64_t> xs_;
  std::vector<uint64_t> zs_;
  std::vector<uint8_t> rs_;
};

/// Executes a Clifford dynamic circuit (measurements, resets, feedback) on
/// the tableau backend. Semantics mirror run_statevector, including the
/// placement of readout-error flips; only the gate set is restricted.
/// Throws std::invalid_argument on invalid circuits or RY gates.
std::unique_ptr<ShotRecordStream> run_tableau(const DynamicCircuit& c, const RunConfig& cfg);

}  // namespace dynshadow

#endif  // DYNSHADOW_TABLEAU_HPP
