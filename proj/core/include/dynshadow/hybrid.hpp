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

#ifndef DYNSHADOW_HYBRID_HPP
#define DYNSHADOW_HYBRID_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dynshadow/circuit.hpp"
#include "dynshadow/records.hpp"

namespace dynshadow {

/// Configuration for the hybrid sampler: the per-qubit basis draw happens in
/// classical software and only the Clifford part (prep, basis change,
/// measurement) runs on the stabilizer backend. Statistically equivalent to
/// executing the full dynamic circuit, but scales far past the dense limit.
struct HybridShadowConfig {
  uint32_t n_qubits = 0;
  std::vector<Gate> prep;                 // Clifford gates only
  std::vector<BasisProbabilities> probs;  // one distribution per qubit
  uint64_t shots = 0;
  uint64_t seed = 0;
  std::optional<ReadoutErrorModel> readout_error;

  /// Product states prepared by an X-only layer admit a shortcut that skips
  /// the tableau: Z-basis qubits read off the prepared bit, X/Y-basis qubits
  /// toss a fair coin. The shortcut consumes rng draws in exactly the same
  /// order as the tableau route, so for such preps the two are bit-identical
  /// shot for shot. Set this to force the general route.
  bool disable_fast_path = false;
};

/// Shot k uses rng stream (seed, k). Per shot the draw order is: one uniform
/// draw per qubit for the basis, then per qubit in index order the
/// measurement draw (only when the outcome is random) followed by one
/// readout-flip draw when a noise model is present.
/// Throws std::invalid_argument on bad configuration or non-Clifford prep.
std::unique_ptr<SnapshotStream> run_hybrid_shadow(const HybridShadowConfig& cfg);

}  // namespace dynshadow

#endif  // DYNSHADOW_HYBRID_HPP
