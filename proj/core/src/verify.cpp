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

#include "dynshadow/verify.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dynshadow/circuit.hpp"
#include "dynshadow/estimator.hpp"
#include "dynshadow/hybrid.hpp"
#include "dynshadow/statevector.hpp"

namespace dynshadow {

const char* VerificationGrid::prep_name(size_t row) {
  static const char* names[3] = {"0", "plus", "yplus"};
  return names[row];
}

const char* VerificationGrid::observable_name(size_t col) {
  static const char* names[3] = {"Z", "X", "Y"};
  return names[col];
}

uint64_t verification_shot_floor(double tolerance) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  return static_cast<uint64_t>(std::ceil(27.0 / (tolerance * tolerance)));
}

VerificationGrid run_single_qubit_verification(uint64_t shots, uint64_t seed,
                                               double tolerance,
                                               std::optional<double> readout_error,
                                               bool mitigate, VerifyBackend backend) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (mitigate && !readout_error) {
    throw std::invalid_argument("mitigation needs a readout error rate");
  }

  // Row preps and column observables; diagonal pairs are +1 eigenstates.
  const std::vector<Gate> preps[3] = {
      {},
      {make_h(0)},
      {make_h(0), make_s(0)},
  };
  const PauliAxis columns[3] = {PauliAxis::Z, PauliAxis::X, PauliAxis::Y};

  VerificationGrid grid;
  grid.shots = shots;
  grid.tolerance = tolerance;
  grid.conclusive = shots >= verification_shot_floor(tolerance);

  const double mit = mitigate ? 1.0 / (1.0 - 2.0 * *readout_error) : 1.0;
  for (size_t row = 0; row < 3; ++row) {
    ShadowAccumulator acc[3];
    auto tally = [&](const Snapshot& s) {
      for (size_t col = 0; col < 3; ++col) {
        double v = 0.0;
        if (s.basis.at(0) == columns[col]) {
          v = 3.0 * static_cast<double>(s.mu[0]) * mit;
        }
        acc[col].add(v);
      }
    };

    if (backend == VerifyBackend::Statevector) {
      DynamicCircuit circuit =
          build_random_pauli_circuit(1, preps[row], {BasisProbabilities::uniform()});
      RunConfig run{shots, seed + row, std::nullopt};
      if (readout_error) {
        // Data qubit only; the scratch qubit's sampler record stays ideal.
        ReadoutErrorModel model;
        model.flip_probability = {*readout_error, 0.0};
        run.readout_error = model;
      }
      auto records = run_statevector(circuit, run);
      ShotSnapshotAdapter snaps(*records, ShadowBitLayout::standard(1));
      Snapshot s;
      while (snaps.next(s)) tally(s);
    } else {
      HybridShadowConfig cfg;
      cfg.n_qubits = 1;
      cfg.prep = preps[row];
      cfg.probs = {BasisProbabilities::uniform()};
      cfg.shots = shots;
      cfg.seed = seed + row;
      if (readout_error) {
        cfg.readout_error = ReadoutErrorModel::uniform(1, *readout_error);
      }
      auto snaps = run_hybrid_shadow(cfg);
      Snapshot s;
      while (snaps->next(s)) tally(s);
    }

    for (size_t col = 0; col < 3; ++col) {
      grid.values[row][col] = acc[col].mean();
    }
  }

  for (size_t row = 0; row < 3; ++row) {
    for (size_t col = 0; col < 3; ++col) {
      double v = grid.values[row][col];
      if (row == col) {
        grid.max_diagonal_deviation = std::max(grid.max_diagonal_deviation, std::abs(v - 1.0));
      } else {
        grid.max_off_diagonal = std::max(grid.max_off_diagonal, std::abs(v));
      }
    }
  }
  grid.passed = grid.max_diagonal_deviation <= tolerance && grid.max_off_diagonal <= tolerance;
  return grid;
}

}  // namespace dynshadow
