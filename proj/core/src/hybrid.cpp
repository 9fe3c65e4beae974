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

#include "dynshadow/hybrid.hpp"

#include <stdexcept>

#include "dynshadow/rng.hpp"
#include "dynshadow/tableau.hpp"

namespace dynshadow {

namespace {

class HybridShadowStream final : public SnapshotStream {
 public:
  explicit HybridShadowStream(HybridShadowConfig cfg)
      : cfg_(std::move(cfg)), prep_state_(cfg_.n_qubits), work_state_(cfg_.n_qubits) {
    if (cfg_.n_qubits == 0) {
      throw std::invalid_argument("hybrid sampler needs at least one qubit");
    }
    if (cfg_.probs.size() != cfg_.n_qubits) {
      throw std::invalid_argument("need one basis distribution per qubit");
    }
    for (const auto& p : cfg_.probs) p.validate();
    if (cfg_.readout_error) {
      cfg_.readout_error->validate();
      if (cfg_.readout_error->flip_probability.size() != cfg_.n_qubits) {
        throw std::invalid_argument("readout error model must cover exactly the data qubits");
      }
    }
    bool x_layer = true;
    prep_bits_.assign(cfg_.n_qubits, 0);
    for (const Gate& g : cfg_.prep) {
      uint32_t top = gate_arity(g.kind) == 2 ? std::max(g.q0, g.q1) : g.q0;
      if (top >= cfg_.n_qubits) {
        throw std::invalid_argument("prep gate acts outside the system register");
      }
      prep_state_.apply(g);  // throws on RY
      if (g.kind == GateKind::X) {
        prep_bits_[g.q0] ^= 1;
      } else {
        x_layer = false;
      }
    }
    fast_path_ = x_layer && !cfg_.disable_fast_path;
    axes_.resize(cfg_.n_qubits);
  }

  bool next(Snapshot& out) override {
    if (shot_ >= cfg_.shots) return false;
    Rng rng(cfg_.seed, shot_);
    const uint32_t n = cfg_.n_qubits;
    for (uint32_t q = 0; q < n; ++q) {
      double u = rng.next_unit();
      const BasisProbabilities& p = cfg_.probs[q];
      axes_[q] = u < p.p_x ? PauliAxis::X
                           : (u < p.p_x + p.p_y ? PauliAxis::Y : PauliAxis::Z);
    }
    out.mu.resize(n);
    if (fast_path_) {
      for (uint32_t q = 0; q < n; ++q) {
        bool bit = axes_[q] == PauliAxis::Z ? prep_bits_[q] != 0 : rng.next_bool(0.5);
        if (cfg_.readout_error && rng.next_bool(cfg_.readout_error->at(q))) bit = !bit;
        out.mu[q] = bit ? -1 : 1;
      }
    } else {
      work_state_ = prep_state_;
      for (uint32_t q = 0; q < n; ++q) {
        for (const Gate& g : basis_change_gates(axes_[q], q)) {
          work_state_.apply(g);
        }
      }
      for (uint32_t q = 0; q < n; ++q) {
        bool bit = work_state_.measure(q, rng);
        if (cfg_.readout_error && rng.next_bool(cfg_.readout_error->at(q))) bit = !bit;
        out.mu[q] = bit ? -1 : 1;
      }
    }
    out.basis = BasisVector(axes_);
    ++shot_;
    return true;
  }

 private:
  HybridShadowConfig cfg_;
  Tableau prep_state_;
  Tableau work_state_;
  std::vector<uint8_t> prep_bits_;
  std::vector<PauliAxis> axes_;
  bool fast_path_ = false;
  uint64_t shot_ = 0;
};

}  // namespace

std::unique_ptr<SnapshotStream> run_hybrid_shadow(const HybridShadowConfig& cfg) {
  return std::make_unique<HybridShadowStream>(cfg);
}

}  // namespace dynshadow
