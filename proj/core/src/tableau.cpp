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

#include "dynshadow/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace dynshadow {

namespace {

constexpr uint64_t bit_mask(uint32_t q) { return uint64_t{1} << (q & 63u); }
constexpr size_t word_of(uint32_t q) { return q >> 6; }

}  // namespace

Tableau::Tableau(uint32_t n_qubits)
    : n_(n_qubits), words_((size_t{n_qubits} + 63) / 64) {
  if (words_ == 0) words_ = 1;
  xs_.assign((2 * size_t{n_} + 1) * words_, 0);
  zs_.assign((2 * size_t{n_} + 1) * words_, 0);
  rs_.assign(2 * size_t{n_} + 1, 0);
  reset_identity();
}

void Tableau::reset_identity() {
  std::fill(xs_.begin(), xs_.end(), 0);
  std::fill(zs_.begin(), zs_.end(), 0);
  std::fill(rs_.begin(), rs_.end(), 0);
  for (uint32_t i = 0; i < n_; ++i) {
    xs_[i * words_ + word_of(i)] |= bit_mask(i);            // destabilizer X_i
    zs_[(n_ + i) * words_ + word_of(i)] |= bit_mask(i);     // stabilizer Z_i
  }
}

bool Tableau::x_bit(uint32_t row, uint32_t q) const {
  return (xs_[row * words_ + word_of(q)] & bit_mask(q)) != 0;
}

bool Tableau::z_bit(uint32_t row, uint32_t q) const {
  return (zs_[row * words_ + word_of(q)] & bit_mask(q)) != 0;
}

void Tableau::zero_row(uint32_t row) {
  for (size_t w = 0; w < words_; ++w) {
    xs_[row * words_ + w] = 0;
    zs_[row * words_ + w] = 0;
  }
  rs_[row] = 0;
}

void Tableau::copy_row(uint32_t dst, uint32_t src) {
  for (size_t w = 0; w < words_; ++w) {
    xs_[dst * words_ + w] = xs_[src * words_ + w];
    zs_[dst * words_ + w] = zs_[src * words_ + w];
  }
  rs_[dst] = rs_[src];
}

int Tableau::sign_exponent(uint32_t h, uint32_t i) const {
  // Counts the power of i (the imaginary unit) picked up when multiplying
  // row i into row h, letter by letter, word-parallel.
  int plus = 0, minus = 0;
  for (size_t w = 0; w < words_; ++w) {
    uint64_t x1 = xs_[i * words_ + w], z1 = zs_[i * words_ + w];
    uint64_t x2 = xs_[h * words_ + w], z2 = zs_[h * words_ + w];
    uint64_t p = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
    uint64_t m = (x1 & ~z1 & ~x2 & z2) | (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2);
    plus += std::popcount(p);
    minus += std::popcount(m);
  }
  return plus - minus;
}

void Tableau::row_mult(uint32_t h, uint32_t i) {
  int phase = 2 * (rs_[h] + rs_[i]) + sign_exponent(h, i);
  for (size_t w = 0; w < words_; ++w) {
    xs_[h * words_ + w] ^= xs_[i * words_ + w];
    zs_[h * words_ + w] ^= zs_[i * words_ + w];
  }
  rs_[h] = static_cast<uint8_t>(((phase % 4) + 4) % 4 == 2);
}

void Tableau::apply(const Gate& g) {
  switch (g.kind) {
    case GateKind::H: apply_h(g.q0); return;
    case GateKind::S: apply_s(g.q0); return;
    case GateKind::Sdg: apply_sdg(g.q0); return;
    case GateKind::X: apply_x(g.q0); return;
    case GateKind::Z: apply_z(g.q0); return;
    case GateKind::CX: apply_cx(g.q0, g.q1); return;
    case GateKind::RY: break;
  }
  throw std::invalid_argument("stabilizer backend cannot apply ry");
}

void Tableau::apply_h(uint32_t q) {
  const size_t w = word_of(q);
  const uint64_t m = bit_mask(q);
  for (uint32_t row = 0; row < 2 * n_; ++row) {
    uint64_t& x = xs_[row * words_ + w];
    uint64_t& z = zs_[row * words_ + w];
    if ((x & m) && (z & m)) rs_[row] ^= 1;
    uint64_t xb = x & m, zb = z & m;
    x = (x & ~m) | zb;
    z = (z & ~m) | xb;
  }
}

void Tableau::apply_s(uint32_t q) {
  const size_t w = word_of(q);
  const uint64_t m = bit_mask(q);
  for (uint32_t row = 0; row < 2 * n_; ++row) {
    uint64_t& x = xs_[row * words_ + w];
    uint64_t& z = zs_[row * words_ + w];
    if ((x & m) && (z & m)) rs_[row] ^= 1;
    z ^= x & m;
  }
}

void Tableau::apply_sdg(uint32_t q) {
  const size_t w = word_of(q);
  const uint64_t m = bit_mask(q);
  for (uint32_t row = 0; row < 2 * n_; ++row) {
    uint64_t& x = xs_[row * words_ + w];
    uint64_t& z = zs_[row * words_ + w];
    if ((x & m) && !(z & m)) rs_[row] ^= 1;
    z ^= x & m;
  }
}

void Tableau::apply_x(uint32_t q) {
  const size_t w = word_of(q);
  const uint64_t m = bit_mask(q);
  for (uint32_t row = 0; row < 2 * n_; ++row) {
    if (zs_[row * words_ + w] & m) rs_[row] ^= 1;
  }
}

void Tableau::apply_z(uint32_t q) {
  const size_t w = word_of(q);
  const uint64_t m = bit_mask(q);
  for (uint32_t row = 0; row < 2 * n_; ++row) {
    if (xs_[row * words_ + w] & m) rs_[row] ^= 1;
  }
}

void Tableau::apply_cx(uint32_t control, uint32_t target) {
  const size_t wc = word_of(control), wt = word_of(target);
  const uint64_t mc = bit_mask(control), mt = bit_mask(target);
  for (uint32_t row = 0; row < 2 * n_; ++row) {
    uint64_t& xc = xs_[row * words_ + wc];
    uint64_t& zc = zs_[row * words_ + wc];
    uint64_t& xt = xs_[row * words_ + wt];
    uint64_t& zt = zs_[row * words_ + wt];
    bool xcb = (xc & mc) != 0, zcb = (zc & mc) != 0;
    bool xtb = (xt & mt) != 0, ztb = (zt & mt) != 0;
    if (xcb && ztb && (xtb == zcb)) rs_[row] ^= 1;
    if (xcb) xt ^= mt;
    if (ztb) zc ^= mc;
  }
}

bool Tableau::deterministic_z(uint32_t qubit, bool* outcome) {
  const size_t w = word_of(qubit);
  const uint64_t m = bit_mask(qubit);
  for (uint32_t row = n_; row < 2 * n_; ++row) {
    if (xs_[row * words_ + w] & m) return false;
  }
  const uint32_t scratch = 2 * n_;
  zero_row(scratch);
  for (uint32_t i = 0; i < n_; ++i) {
    if (xs_[i * words_ + w] & m) row_mult(scratch, n_ + i);
  }
  *outcome = rs_[scratch] != 0;
  return true;
}

bool Tableau::measure(uint32_t qubit, Rng& rng) {
  const size_t w = word_of(qubit);
  const uint64_t m = bit_mask(qubit);
  uint32_t p = 2 * n_;
  for (uint32_t row = n_; row < 2 * n_; ++row) {
    if (xs_[row * words_ + w] & m) {
      p = row;
      break;
    }
  }
  if (p < 2 * n_) {
    for (uint32_t row = 0; row < 2 * n_; ++row) {
      if (row != p && (xs_[row * words_ + w] & m)) row_mult(row, p);
    }
    copy_row(p - n_, p);
    zero_row(p);
    zs_[p * words_ + w] |= m;
    bool outcome = rng.next_bool(0.5);
    rs_[p] = outcome ? 1 : 0;
    return outcome;
  }
  bool outcome = false;
  deterministic_z(qubit, &outcome);
  return outcome;
}

void Tableau::reset(uint32_t qubit, Rng& rng) {
  if (measure(qubit, rng)) apply_x(qubit);
}

double Tableau::pauli_expectation(const PauliString& p) {
  if (p.n_qubits() != n_) {
    throw std::invalid_argument("Pauli register size mismatch");
  }
  std::vector<uint64_t> px(words_, 0), pz(words_, 0);
  for (const auto& [q, a] : p.letters()) {
    if (a == PauliAxis::X || a == PauliAxis::Y) px[word_of(q)] |= bit_mask(q);
    if (a == PauliAxis::Y || a == PauliAxis::Z) pz[word_of(q)] |= bit_mask(q);
  }
  auto anticommutes = [&](uint32_t row) {
    int acc = 0;
    for (size_t w = 0; w < words_; ++w) {
      acc += std::popcount(px[w] & zs_[row * words_ + w]);
      acc += std::popcount(pz[w] & xs_[row * words_ + w]);
    }
    return (acc & 1) != 0;
  };
  for (uint32_t row = n_; row < 2 * n_; ++row) {
    if (anticommutes(row)) return 0.0;
  }
  const uint32_t scratch = 2 * n_;
  zero_row(scratch);
  for (uint32_t i = 0; i < n_; ++i) {
    if (anticommutes(i)) row_mult(scratch, n_ + i);
  }
  for (size_t w = 0; w < words_; ++w) {
    if (xs_[scratch * words_ + w] != px[w] || zs_[scratch * words_ + w] != pz[w]) {
      return 0.0;
    }
  }
  return rs_[scratch] ? -1.0 : 1.0;
}

namespace {

class TableauRunStream final : public ShotRecordStream {
 public:
  TableauRunStream(DynamicCircuit c, RunConfig cfg)
      : circuit_(std::move(c)), cfg_(cfg), state_(circuit_.n_qubits) {}

  bool next(ShotRecord& out) override {
    if (shot_ >= cfg_.shots) return false;
    state_.reset_identity();
    Rng rng(cfg_.seed, shot_);
    out.values.assign(circuit_.n_clbits, 0);
    for (const Instruction& ins : circuit_.instructions) {
      if (const Gate* g = std::get_if<Gate>(&ins.op)) {
        state_.apply(*g);
      } else if (const Measure* m = std::get_if<Measure>(&ins.op)) {
        bool outcome = state_.measure(m->qubit, rng);
        bool recorded = outcome;
        if (cfg_.readout_error) {
          if (rng.next_bool(cfg_.readout_error->at(m->qubit))) recorded = !recorded;
        }
        out.values[m->clbit] = recorded ? 1 : 0;
      } else if (const Reset* r = std::get_if<Reset>(&ins.op)) {
        state_.reset(r->qubit, rng);
      } else if (const Conditional* cond = std::get_if<Conditional>(&ins.op)) {
        bool match = true;
        for (size_t i = 0; i < cond->bits.size(); ++i) {
          if (out.values[cond->bits[i]] != cond->values[i]) {
            match = false;
            break;
          }
        }
        if (match) {
          for (const Instruction& body_ins : cond->body) {
            state_.apply(std::get<Gate>(body_ins.op));
          }
        }
      }
    }
    ++shot_;
    return true;
  }

 private:
  DynamicCircuit circuit_;
  RunConfig cfg_;
  Tableau state_;
  uint64_t shot_ = 0;
};

bool has_ry(const std::vector<Instruction>& instrs) {
  for (const Instruction& ins : instrs) {
    if (const Gate* g = std::get_if<Gate>(&ins.op)) {
      if (g->kind == GateKind::RY) return true;
    } else if (const Conditional* cond = std::get_if<Conditional>(&ins.op)) {
      if (has_ry(cond->body)) return true;
    }
  }
  return false;
}

}  // namespace

std::unique_ptr<ShotRecordStream> run_tableau(const DynamicCircuit& c, const RunConfig& cfg) {
  auto problems = validate_circuit(c);
  if (!problems.empty()) {
    throw std::invalid_argument("invalid circuit: " + problems.front());
  }
  if (has_ry(c.instructions)) {
    throw std::invalid_argument("stabilizer backend cannot apply ry");
  }
  if (cfg.readout_error) {
    cfg.readout_error->validate();
    if (cfg.readout_error->flip_probability.size() < c.n_qubits) {
      throw std::invalid_argument("readout error model smaller than qubit register");
    }
  }
  return std::make_unique<TableauRunStream>(c, cfg);
}

}  // namespace dynshadow
