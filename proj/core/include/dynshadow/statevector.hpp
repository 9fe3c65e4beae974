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

#ifndef DYNSHADOW_STATEVECTOR_HPP
#define DYNSHADOW_STATEVECTOR_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dynshadow/circuit.hpp"
#include "dynshadow/records.hpp"
#include "dynshadow/rng.hpp"

namespace dynshadow {

/// Dense 2^n complex amplitude vector. Basis index bit i (least significant
/// bit = qubit 0) holds qubit i's computational value.
class StateVector {
 public:
  explicit StateVector(uint32_t n_qubits);

  uint32_t n_qubits() const { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  void reset_all_zero();
  void apply(const Gate& g);

  double prob_one(uint32_t qubit) const;

  /// Projects onto the given outcome and renormalizes. `prob` is the
  /// probability of that outcome (pass the value from prob_one to avoid
  /// recomputation); must be positive.
  void collapse(uint32_t qubit, bool outcome, double prob);

  /// Measures in Z with `rng`, collapses, returns the outcome.
  bool measure(uint32_t qubit, Rng& rng);

  /// Projective reset to |0>: measure, then X on outcome 1. Consumes exactly
  /// one rng draw, like measure.
  void reset(uint32_t qubit, Rng& rng);

  double norm() const;
  std::complex<double> inner(const StateVector& other) const;

  /// <psi| P |psi> for a Pauli word on this register.
  double pauli_expectation(const PauliString& p) const;

 private:
  uint32_t n_;
  std::vector<std::complex<double>> amps_;
};

inline constexpr uint32_t kStatevectorQubitLimit = 20;

/// Executes `c` shot by shot on a dense statevector. Shot k uses rng stream
/// (cfg.seed, k): adding or removing shots never changes other shots. When
/// cfg.readout_error is set the flip is applied to each recorded bit right
/// after its measurement, so later conditionals see the corrupted value; the
/// quantum state keeps the true post-measurement projection.
/// Throws std::invalid_argument if validate_circuit(c) reports problems or
/// n_qubits exceeds `qubit_limit`.
std::unique_ptr<ShotRecordStream> run_statevector(
    const DynamicCircuit& c, const RunConfig& cfg,
    uint32_t qubit_limit = kStatevectorQubitLimit);

/// Exact joint distribution of the final classical register, keyed by bit
/// string (clbit 0 leftmost). Enumerates every measurement branch with its
/// amplitude-squared probability; branches below weight 1e-15 are pruned.
/// With `readout_error`, each measurement branches again over recorded
/// values. Throws std::runtime_error if the branch tree exceeds `max_leaves`
/// leaves and std::invalid_argument on an invalid circuit.
std::map<std::string, double> enumerate_exact(
    const DynamicCircuit& c,
    const std::optional<ReadoutErrorModel>& readout_error = std::nullopt,
    size_t max_leaves = size_t{1} << 20);

/// Exact <P> of the final state, averaged over measurement branches (noise
/// free). The register convention matches the circuit's qubit indices.
double expectation_exact(const DynamicCircuit& c, const PauliString& obs,
                         size_t max_leaves = size_t{1} << 20);

/// Walks every measurement branch of `c`, invoking `leaf` with the final
/// state, final classical register, and branch probability. Building block
/// for the two functions above; exposed for tests and custom reductions.
void for_each_branch(
    const DynamicCircuit& c, const std::optional<ReadoutErrorModel>& readout_error,
    size_t max_leaves,
    const std::function<void(const StateVector&, const std::vector<uint8_t>&, double)>& leaf);

}  // namespace dynshadow

#endif  // DYNSHADOW_STATEVECTOR_HPP
