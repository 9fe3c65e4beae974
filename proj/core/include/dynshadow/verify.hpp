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

#ifndef DYNSHADOW_VERIFY_HPP
#define DYNSHADOW_VERIFY_HPP

#include <array>
#include <cstdint>
#include <optional>

namespace dynshadow {

/// Shadow estimates of <Z>, <X>, <Y> (columns) for the single-qubit preps
/// |0>, |+>, |y+> (rows). The expected matrix is the identity: each prep is
/// the +1 eigenstate of its diagonal observable and unbiased in the rest.
struct VerificationGrid {
  std::array<std::array<double, 3>, 3> values{};
  uint64_t shots = 0;
  double tolerance = 0.0;
  bool conclusive = false;
  bool passed = false;
  double max_diagonal_deviation = 0.0;
  double max_off_diagonal = 0.0;

  static const char* prep_name(size_t row);        // "0", "plus", "yplus"
  static const char* observable_name(size_t col);  // "Z", "X", "Y"
};

enum class VerifyBackend {
  Statevector,        // full dynamic circuit, dense simulation
  HybridStabilizer,   // classical basis draw + tableau measurement
};

/// Smallest shot count at which a clean run stays inside `tolerance` with
/// three-sigma headroom: per-snapshot values are 0 or +-3, so the variance
/// is at most 3 and 3*sqrt(3/N) <= tol needs N >= 27/tol^2.
uint64_t verification_shot_floor(double tolerance);

/// Runs the 3x3 grid with uniform basis weights, one rng stream family per
/// prep row. `readout_error` flips the recorded data-qubit measurement with
/// the given probability; the sampler's basis draw is treated as ideal (a
/// flip there would silently relabel the basis, which is a different effect
/// than readout noise on the estimated qubit). `mitigate` rescales by
/// 1/(1-2e). Runs below verification_shot_floor(tolerance) come back
/// conclusive=false; `passed` then only reports whether the grid happened
/// to land inside the tolerance.
VerificationGrid run_single_qubit_verification(
    uint64_t shots, uint64_t seed, double tolerance = 0.02,
    std::optional<double> readout_error = std::nullopt, bool mitigate = false,
    VerifyBackend backend = VerifyBackend::Statevector);

}  // namespace dynshadow

#endif  // DYNSHADOW_VERIFY_HPP
