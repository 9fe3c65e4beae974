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

#include "oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <variant>

#include "dynshadow/stats.hpp"

namespace oracle {

namespace {

using namespace dynshadow;

constexpr cd kI{0.0, 1.0};

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 out{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
    }
  }
  return out;
}

Mat2 mat_dagger(const Mat2& a) {
  return Mat2{{{std::conj(a[0][0]), std::conj(a[1][0])},
               {std::conj(a[0][1]), std::conj(a[1][1])}}};
}

}  // namespace

Mat2 gate_matrix(GateKind kind, double angle) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case GateKind::H:
      return Mat2{{{s, s}, {s, -s}}};
    case GateKind::S:
      return Mat2{{{1.0, 0.0}, {0.0, kI}}};
    case GateKind::Sdg:
      return Mat2{{{1.0, 0.0}, {0.0, -kI}}};
    case GateKind::X:
      return Mat2{{{0.0, 1.0}, {1.0, 0.0}}};
    case GateKind::Z:
      return Mat2{{{1.0, 0.0}, {0.0, -1.0}}};
    case GateKind::RY: {
      double c = std::cos(angle / 2.0), sn = std::sin(angle / 2.0);
      return Mat2{{{c, -sn}, {sn, c}}};
    }
    case GateKind::CX:
      throw std::invalid_argument("gate_matrix: cx is not single-qubit");
  }
  throw std::invalid_argument("gate_matrix: unknown kind");
}

Mat2 pauli_matrix(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X:
      return Mat2{{{0.0, 1.0}, {1.0, 0.0}}};
    case PauliAxis::Y:
      return Mat2{{{0.0, -kI}, {kI, 0.0}}};
    case PauliAxis::Z:
      return Mat2{{{1.0, 0.0}, {0.0, -1.0}}};
  }
  throw std::invalid_argument("pauli_matrix: unknown axis");
}

Mat2 axis_rotation(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X:
      return gate_matrix(GateKind::H);
    case PauliAxis::Y:
      return mat_mul(gate_matrix(GateKind::H), gate_matrix(GateKind::Sdg));
    case PauliAxis::Z:
      return Mat2{{{1.0, 0.0}, {0.0, 1.0}}};
  }
  throw std::invalid_argument("axis_rotation: unknown axis");
}

std::vector<cd> zero_state(uint32_t n_qubits) {
  std::vector<cd> amp(size_t{1} << n_qubits, cd{0.0, 0.0});
  amp[0] = 1.0;
  return amp;
}

void apply_matrix(std::vector<cd>& amp, const Mat2& m, uint32_t qubit) {
  const size_t bit = size_t{1} << qubit;
  for (size_t i = 0; i < amp.size(); ++i) {
    if (i & bit) continue;
    cd a0 = amp[i], a1 = amp[i | bit];
    amp[i] = m[0][0] * a0 + m[0][1] * a1;
    amp[i | bit] = m[1][0] * a0 + m[1][1] * a1;
  }
}

void apply_gate(std::vector<cd>& amp, const Gate& g) {
  if (g.kind == GateKind::CX) {
    const size_t cbit = size_t{1} << g.q0;
    const size_t tbit = size_t{1} << g.q1;
    for (size_t i = 0; i < amp.size(); ++i) {
      if ((i & cbit) && !(i & tbit)) std::swap(amp[i], amp[i | tbit]);
    }
    return;
  }
  apply_matrix(amp, gate_matrix(g.kind, g.angle), g.q0);
}

cd inner(const std::vector<cd>& a, const std::vector<cd>& b) {
  cd acc{0.0, 0.0};
  for (size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double pauli_expectation(const std::vector<cd>& amp, const PauliString& p) {
  std::vector<cd> out = amp;
  for (const auto& [qubit, axis] : p.letters()) {
    apply_matrix(out, pauli_matrix(axis), qubit);
  }
  return inner(amp, out).real();
}

namespace {

struct Walker {
  const DynamicCircuit& circuit;
  const std::optional<ReadoutErrorModel>& noise;
  std::map<std::string, double> out;

  double flip_probability(uint32_t qubit) const {
    return noise ? noise->at(qubit) : 0.0;
  }

  void emit(const std::vector<uint8_t>& bits, double weight) {
    out[format_bits(bits)] += weight;
  }

  void run_gates(std::vector<cd>& amp, const std::vector<Instruction>& body) {
    for (const auto& inst : body) {
      apply_gate(amp, std::get<Gate>(inst.op));
    }
  }

  void walk(size_t idx, std::vector<cd> amp, std::vector<uint8_t> bits, double weight) {
    for (; idx < circuit.instructions.size(); ++idx) {
      const Instruction& inst = circuit.instructions[idx];
      if (std::holds_alternative<Gate>(inst.op)) {
        apply_gate(amp, std::get<Gate>(inst.op));
        continue;
      }
      if (std::holds_alternative<Conditional>(inst.op)) {
        const auto& cond = std::get<Conditional>(inst.op);
        bool taken = true;
        for (size_t k = 0; k < cond.bits.size(); ++k) {
          if (bits[cond.bits[k]] != cond.values[k]) taken = false;
        }
        if (taken) run_gates(amp, cond.body);
        continue;
      }
      if (std::holds_alternative<Measure>(inst.op)) {
        const auto& m = std::get<Measure>(inst.op);
        const size_t bit = size_t{1} << m.qubit;
        double p1 = 0.0;
        for (size_t i = 0; i < amp.size(); ++i) {
          if (i & bit) p1 += std::norm(amp[i]);
        }
        const double e = flip_probability(m.qubit);
        for (int outcome = 0; outcome < 2; ++outcome) {
          double p = outcome ? p1 : 1.0 - p1;
          if (p <= 0.0) continue;
          std::vector<cd> proj(amp.size(), cd{0.0, 0.0});
          double scale = 1.0 / std::sqrt(p);
          for (size_t i = 0; i < amp.size(); ++i) {
            if (((i & bit) != 0) == (outcome == 1)) proj[i] = amp[i] * scale;
          }
          for (int recorded = 0; recorded < 2; ++recorded) {
            double q = recorded == outcome ? 1.0 - e : e;
            if (q <= 0.0) continue;
            std::vector<uint8_t> b2 = bits;
            b2[m.clbit] = static_cast<uint8_t>(recorded);
            walk(idx + 1, proj, std::move(b2), weight * p * q);
          }
        }
        return;
      }
      const auto& r = std::get<Reset>(inst.op);
      const size_t bit = size_t{1} << r.qubit;
      double p1 = 0.0;
      for (size_t i = 0; i < amp.size(); ++i) {
        if (i & bit) p1 += std::norm(amp[i]);
      }
      for (int outcome = 0; outcome < 2; ++outcome) {
        double p = outcome ? p1 : 1.0 - p1;
        if (p <= 0.0) continue;
        std::vector<cd> proj(amp.size(), cd{0.0, 0.0});
        double scale = 1.0 / std::sqrt(p);
        for (size_t i = 0; i < amp.size(); ++i) {
          if (((i & bit) != 0) == (outcome == 1)) proj[i] = amp[i] * scale;
        }
        if (outcome == 1) apply_gate(proj, make_x(r.qubit));
        walk(idx + 1, proj, bits, weight * p);
      }
      return;
    }
    emit(bits, weight);
  }
};

}  // namespace

std::map<std::string, double> enumerate_circuit(
    const DynamicCircuit& c, const std::optional<ReadoutErrorModel>& readout_error) {
  Walker w{c, readout_error, {}};
  w.walk(0, zero_state(c.n_qubits), std::vector<uint8_t>(c.n_clbits, 0), 1.0);
  return w.out;
}

double snapshot_trace(const Snapshot& s, const PauliString& q) {
  if (s.basis.n_qubits() != q.n_qubits()) {
    throw std::invalid_argument("snapshot_trace: size mismatch");
  }
  double prod = 1.0;
  for (uint32_t i = 0; i < q.n_qubits(); ++i) {
    Mat2 u = axis_rotation(s.basis.at(i));
    int b = s.mu[i] > 0 ? 0 : 1;
    Mat2 ketbra{};
    ketbra[b][b] = 1.0;
    Mat2 rho = mat_mul(mat_dagger(u), mat_mul(ketbra, u));
    for (auto& row : rho) {
      for (auto& v : row) v *= 3.0;
    }
    rho[0][0] -= 1.0;
    rho[1][1] -= 1.0;
    Mat2 factor = rho;
    PauliAxis axis = q.axis_at(i);
    if (axis != PauliAxis::I) factor = mat_mul(rho, pauli_matrix(axis));
    cd tr = factor[0][0] + factor[1][1];
    prod *= tr.real();
  }
  return prod;
}

double gof_pvalue(const std::map<std::string, uint64_t>& counts, uint64_t total,
                  const std::map<std::string, double>& probs) {
  for (const auto& [key, n] : counts) {
    auto it = probs.find(key);
    if (n > 0 && (it == probs.end() || it->second <= 0.0)) return 0.0;
  }
  double stat = 0.0;
  uint64_t dof = 0;
  for (const auto& [key, p] : probs) {
    if (p <= 0.0) continue;
    auto it = counts.find(key);
    double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    double expected = p * static_cast<double>(total);
    stat += (observed - expected) * (observed - expected) / expected;
    ++dof;
  }
  if (dof < 2) return 1.0;
  return chi_square_pvalue(stat, static_cast<double>(dof - 1));
}

}  // namespace oracle
