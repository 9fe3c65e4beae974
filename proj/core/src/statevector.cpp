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

#include "dynshadow/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dynshadow {

namespace {

constexpr double kBranchPrune = 1e-15;

using cplx = std::complex<double>;

void throw_if_invalid(const DynamicCircuit& c) {
  auto problems = validate_circuit(c);
  if (!problems.empty()) {
    throw std::invalid_argument("invalid circuit: " + problems.front());
  }
}

}  // namespace

StateVector::StateVector(uint32_t n_qubits) : n_(n_qubits) {
  if (n_qubits > 30) {
    throw std::invalid_argument("dense statevector limited to 30 qubits");
  }
  amps_.assign(size_t{1} << n_, cplx{0.0, 0.0});
  amps_[0] = cplx{1.0, 0.0};
}

void StateVector::reset_all_zero() {
  std::fill(amps_.begin(), amps_.end(), cplx{0.0, 0.0});
  amps_[0] = cplx{1.0, 0.0};
}

void StateVector::apply(const Gate& g) {
  const size_t dim = amps_.size();
  const size_t step = size_t{1} << g.q0;
  switch (g.kind) {
    case GateKind::H: {
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      for (size_t base = 0; base < dim; base += 2 * step) {
        for (size_t i = base; i < base + step; ++i) {
          cplx a0 = amps_[i], a1 = amps_[i + step];
          amps_[i] = (a0 + a1) * inv_sqrt2;
          amps_[i + step] = (a0 - a1) * inv_sqrt2;
        }
      }
      break;
    }
    case GateKind::S: {
      for (size_t base = 0; base < dim; base += 2 * step) {
        for (size_t i = base; i < base + step; ++i) {
          amps_[i + step] *= cplx{0.0, 1.0};
        }
      }
      break;
    }
    case GateKind::Sdg: {
      for (size_t base = 0; base < dim; base += 2 * step) {
        for (size_t i = base; i < base + step; ++i) {
          amps_[i + step] *= cplx{0.0, -1.0};
        }
      }
      break;
    }
    case GateKind::X: {
      for (size_t base = 0; base < dim; base += 2 * step) {
        for (size_t i = base; i < base + step; ++i) {
          std::swap(amps_[i], amps_[i + step]);
        }
      }
      break;
    }
    case GateKind::Z: {
      for (size_t base = 0; base < dim; base += 2 * step) {
        for (size_t i = base; i < base + step; ++i) {
          amps_[i + step] = -amps_[i + step];
        }
      }
      break;
    }
    case GateKind::RY: {
      const double c = std::cos(g.angle / 2);
      const double s = std::sin(g.angle / 2);
      for (size_t base = 0; base < dim; base += 2 * step) {
        for (size_t i = base; i < base + step; ++i) {
          cplx a0 = amps_[i], a1 = amps_[i + step];
          amps_[i] = c * a0 - s * a1;
          amps_[i + step] = s * a0 + c * a1;
        }
      }
      break;
    }
    case GateKind::CX: {
      const size_t cmask = size_t{1} << g.q0;
      const size_t tmask = size_t{1} << g.q1;
      for (size_t i = 0; i < dim; ++i) {
        if ((i & cmask) && !(i & tmask)) {
          std::swap(amps_[i], amps_[i | tmask]);
        }
      }
      break;
    }
  }
}

double StateVector::prob_one(uint32_t qubit) const {
  const size_t mask = size_t{1} << qubit;
  double p = 0.0;
  for (size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) p += std::norm(amps_[i]);
  }
  return p;
}

void StateVector::collapse(uint32_t qubit, bool outcome, double prob) {
  if (!(prob > 0.0)) {
    throw std::invalid_argument("cannot collapse onto a zero-probability outcome");
  }
  const size_t mask = size_t{1} << qubit;
  const double scale = 1.0 / std::sqrt(prob);
  for (size_t i = 0; i < amps_.size(); ++i) {
    bool bit = (i & mask) != 0;
    amps_[i] = bit == outcome ? amps_[i] * scale : cplx{0.0, 0.0};
  }
}

bool StateVector::measure(uint32_t qubit, Rng& rng) {
  double p1 = prob_one(qubit);
  bool outcome = rng.next_bool(p1);
  collapse(qubit, outcome, outcome ? p1 : 1.0 - p1);
  return outcome;
}

void StateVector::reset(uint32_t qubit, Rng& rng) {
  if (measure(qubit, rng)) {
    apply(make_x(qubit));
  }
}

double StateVector::norm() const {
  double p = 0.0;
  for (const cplx& a : amps_) p += std::norm(a);
  return std::sqrt(p);
}

std::complex<double> StateVector::inner(const StateVector& other) const {
  if (other.n_ != n_) {
    throw std::invalid_argument("inner product register size mismatch");
  }
  cplx acc{0.0, 0.0};
  for (size_t i = 0; i < amps_.size(); ++i) {
    acc += std::conj(amps_[i]) * other.amps_[i];
  }
  return acc;
}

double StateVector::pauli_expectation(const PauliString& p) const {
  if (p.n_qubits() != n_) {
    throw std::invalid_argument("Pauli register size mismatch");
  }
  size_t xmask = 0, phase_mask = 0;
  int y_count = 0;
  for (const auto& [q, a] : p.letters()) {
    if (a == PauliAxis::X || a == PauliAxis::Y) xmask |= size_t{1} << q;
    if (a == PauliAxis::Y || a == PauliAxis::Z) phase_mask |= size_t{1} << q;
    if (a == PauliAxis::Y) ++y_count;
  }
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx y_phase = kIPow[y_count & 3];
  cplx acc{0.0, 0.0};
  for (size_t j = 0; j < amps_.size(); ++j) {
    cplx term = std::conj(amps_[j ^ xmask]) * amps_[j] * y_phase;
    if (std::popcount(j & phase_mask) & 1) term = -term;
    acc += term;
  }
  return acc.real();
}

namespace {

// Applies gates and matching conditionals; executes measurements and resets
// with rng draws; used by the sampling runner.
void execute(const std::vector<Instruction>& instrs, StateVector& sv,
             std::vector<uint8_t>& record, Rng& rng,
             const std::optional<ReadoutErrorModel>& noise) {
  for (const Instruction& ins : instrs) {
    if (const Gate* g = std::get_if<Gate>(&ins.op)) {
      sv.apply(*g);
    } else if (const Measure* m = std::get_if<Measure>(&ins.op)) {
      bool outcome = sv.measure(m->qubit, rng);
      bool recorded = outcome;
      if (noise) {
        if (rng.next_bool(noise->at(m->qubit))) recorded = !recorded;
      }
      record[m->clbit] = recorded ? 1 : 0;
    } else if (const Reset* r = std::get_if<Reset>(&ins.op)) {
      sv.reset(r->qubit, rng);
    } else if (const Conditional* cond = std::get_if<Conditional>(&ins.op)) {
      bool match = true;
      for (size_t i = 0; i < cond->bits.size(); ++i) {
        if (record[cond->bits[i]] != cond->values[i]) {
          match = false;
          break;
        }
      }
      if (match) {
        for (const Instruction& body_ins : cond->body) {
          sv.apply(std::get<Gate>(body_ins.op));
        }
      }
    }
  }
}

class StatevectorRunStream final : public ShotRecordStream {
 public:
  StatevectorRunStream(DynamicCircuit c, RunConfig cfg)
      : circuit_(std::move(c)), cfg_(cfg), state_(circuit_.n_qubits) {}

  bool next(ShotRecord& out) override {
    if (shot_ >= cfg_.shots) return false;
    state_.reset_all_zero();
    Rng rng(cfg_.seed, shot_);
    out.values.assign(circuit_.n_clbits, 0);
    execute(circuit_.instructions, state_, out.values, rng, cfg_.readout_error);
    ++shot_;
    return true;
  }

 private:
  DynamicCircuit circuit_;
  RunConfig cfg_;
  StateVector state_;
  uint64_t shot_ = 0;
};

struct BranchWalker {
  const DynamicCircuit& c;
  const std::optional<ReadoutErrorModel>& noise;
  size_t max_leaves;
  const std::function<void(const StateVector&, const std::vector<uint8_t>&, double)>& leaf;
  size_t leaves = 0;

  // Owns sv and record: callers pass copies at branch points.
  void step(size_t idx, StateVector& sv, std::vector<uint8_t>& record, double weight) {
    while (idx < c.instructions.size()) {
      const Instruction& ins = c.instructions[idx];
      if (const Gate* g = std::get_if<Gate>(&ins.op)) {
        sv.apply(*g);
        ++idx;
      } else if (const Conditional* cond = std::get_if<Conditional>(&ins.op)) {
        bool match = true;
        for (size_t i = 0; i < cond->bits.size(); ++i) {
          if (record[cond->bits[i]] != cond->values[i]) {
            match = false;
            break;
          }
        }
        if (match) {
          for (const Instruction& body_ins : cond->body) {
            sv.apply(std::get<Gate>(body_ins.op));
          }
        }
        ++idx;
      } else {
        break;
      }
    }
    if (idx == c.instructions.size()) {
      if (++leaves > max_leaves) {
        throw std::runtime_error("branch enumeration exceeded the leaf budget");
      }
      leaf(sv, record, weight);
      return;
    }

    if (const Measure* m = std::get_if<Measure>(&c.instructions[idx].op)) {
      double p1 = sv.prob_one(m->qubit);
      for (int outcome = 0; outcome <= 1; ++outcome) {
        double p = outcome ? p1 : 1.0 - p1;
        if (!(weight * p >= kBranchPrune)) continue;
        const double e = noise ? noise->at(m->qubit) : 0.0;
        for (int recorded = 0; recorded <= 1; ++recorded) {
          double q = recorded == outcome ? 1.0 - e : e;
          double child = weight * p * q;
          if (!(child >= kBranchPrune)) continue;
          StateVector sv2 = sv;
          sv2.collapse(m->qubit, outcome != 0, p);
          std::vector<uint8_t> rec2 = record;
          rec2[m->clbit] = static_cast<uint8_t>(recorded);
          step(idx + 1, sv2, rec2, child);
        }
      }
    } else {
      const Reset& reset = std::get<Reset>(c.instructions[idx].op);
      double p1 = sv.prob_one(reset.qubit);
      for (int outcome = 0; outcome <= 1; ++outcome) {
        double p = outcome ? p1 : 1.0 - p1;
        if (!(weight * p >= kBranchPrune)) continue;
        StateVector sv2 = sv;
        sv2.collapse(reset.qubit, outcome != 0, p);
        if (outcome) sv2.apply(make_x(reset.qubit));
        std::vector<uint8_t> rec2 = record;
        step(idx + 1, sv2, rec2, weight * p);
      }
    }
  }
};

}  // namespace

std::unique_ptr<ShotRecordStream> run_statevector(const DynamicCircuit& c,
                                                  const RunConfig& cfg,
                                                  uint32_t qubit_limit) {
  throw_if_invalid(c);
  if (c.n_qubits > qubit_limit) {
    throw std::invalid_argument("circuit exceeds the statevector qubit limit of " +
                                std::to_string(qubit_limit));
  }
  if (cfg.readout_error) {
    cfg.readout_error->validate();
    if (cfg.readout_error->flip_probability.size() < c.n_qubits) {
      throw std::invalid_argument("readout error model smaller than qubit register");
    }
  }
  return std::make_unique<StatevectorRunStream>(c, cfg);
}

void for_each_branch(
    const DynamicCircuit& c, const std::optional<ReadoutErrorModel>& readout_error,
    size_t max_leaves,
    const std::function<void(const StateVector&, const std::vector<uint8_t>&, double)>& leaf) {
  throw_if_invalid(c);
  if (readout_error) {
    readout_error->validate();
    if (readout_error->flip_probability.size() < c.n_qubits) {
      throw std::invalid_argument("readout error model smaller than qubit register");
    }
  }
  BranchWalker walker{c, readout_error, max_leaves, leaf};
  StateVector sv(c.n_qubits);
  std::vector<uint8_t> record(c.n_clbits, 0);
  walker.step(0, sv, record, 1.0);
}

std::map<std::string, double> enumerate_exact(
    const DynamicCircuit& c, const std::optional<ReadoutErrorModel>& readout_error,
    size_t max_leaves) {
  std::map<std::string, double> out;
  for_each_branch(c, readout_error, max_leaves,
                  [&](const StateVector&, const std::vector<uint8_t>& record, double w) {
                    out[format_bits(record)] += w;
                  });
  return out;
}

double expectation_exact(const DynamicCircuit& c, const PauliString& obs, size_t max_leaves) {
  if (obs.n_qubits() != c.n_qubits) {
    throw std::invalid_argument("observable register size mismatch");
  }
  double acc = 0.0;
  double total = 0.0;
  for_each_branch(c, std::nullopt, max_leaves,
                  [&](const StateVector& sv, const std::vector<uint8_t>&, double w) {
                    acc += w * sv.pauli_expectation(obs);
                    total += w;
                  });
  if (total <= 0.0) {
    throw std::runtime_error("all branches pruned");
  }
  return acc / total;
}

}  // namespace dynshadow
