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

#include "dynshadow/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dynshadow {

namespace {

std::string idx_label(const char* stem, uint32_t i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s[%u]", stem, i);
  return buf;
}

double clamped_sqrt(double x) {
  if (x < 0.0) x = 0.0;
  if (x > 1.0) x = 1.0;
  return std::sqrt(x);
}

}  // namespace

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
    case GateKind::RY: return "ry";
    case GateKind::CX: return "cx";
  }
  throw std::invalid_argument("invalid GateKind value");
}

GateKind gate_from_name(std::string_view name) {
  if (name == "h") return GateKind::H;
  if (name == "s") return GateKind::S;
  if (name == "sdg") return GateKind::Sdg;
  if (name == "x") return GateKind::X;
  if (name == "z") return GateKind::Z;
  if (name == "ry") return GateKind::RY;
  if (name == "cx") return GateKind::CX;
  throw std::invalid_argument("unknown gate name: " + std::string(name));
}

uint32_t gate_arity(GateKind k) { return k == GateKind::CX ? 2 : 1; }

bool gate_is_clifford(GateKind k) { return k != GateKind::RY; }

Gate make_h(uint32_t q) { return {GateKind::H, q, 0, 0.0}; }
Gate make_s(uint32_t q) { return {GateKind::S, q, 0, 0.0}; }
Gate make_sdg(uint32_t q) { return {GateKind::Sdg, q, 0, 0.0}; }
Gate make_x(uint32_t q) { return {GateKind::X, q, 0, 0.0}; }
Gate make_z(uint32_t q) { return {GateKind::Z, q, 0, 0.0}; }
Gate make_ry(double angle, uint32_t q) { return {GateKind::RY, q, 0, angle}; }
Gate make_cx(uint32_t control, uint32_t target) { return {GateKind::CX, control, target, 0.0}; }

bool Conditional::operator==(const Conditional& o) const {
  return bits == o.bits && values == o.values && body == o.body;
}

double BasisProbabilities::prob(PauliAxis a) const {
  switch (a) {
    case PauliAxis::X: return p_x;
    case PauliAxis::Y: return p_y;
    case PauliAxis::Z: return p_z;
    case PauliAxis::I: break;
  }
  throw std::invalid_argument("basis probability requested for identity axis");
}

void BasisProbabilities::validate() const {
  if (!(p_x >= 0.0) || !(p_y >= 0.0) || !(p_z >= 0.0)) {
    throw std::invalid_argument("basis probabilities must be nonnegative");
  }
  double sum = p_x + p_y + p_z;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("basis probabilities must sum to 1");
  }
}

ReadoutErrorModel ReadoutErrorModel::uniform(uint32_t n_qubits, double e) {
  ReadoutErrorModel m;
  m.flip_probability.assign(n_qubits, e);
  m.validate();
  return m;
}

void ReadoutErrorModel::validate() const {
  for (double e : flip_probability) {
    if (!(e >= 0.0) || !(e < 0.5)) {
      throw std::invalid_argument("readout flip probability must lie in [0, 0.5)");
    }
  }
}

SamplerAngles angles_for_distribution(const BasisProbabilities& p) {
  p.validate();
  double pxy = p.p_x + p.p_y;
  SamplerAngles a;
  a.theta1 = 2.0 * std::acos(clamped_sqrt(pxy));
  a.theta2 = pxy > 0.0 ? 2.0 * std::acos(clamped_sqrt(p.p_x / pxy)) : 0.0;
  return a;
}

std::string store_z_label(uint32_t qubit) { return idx_label("Store_Z", qubit); }
std::string store_xy_label(uint32_t qubit) { return idx_label("Store_XY", qubit); }
std::string result_label(uint32_t qubit) { return idx_label("Result", qubit); }

std::vector<Gate> basis_change_gates(PauliAxis axis, uint32_t qubit) {
  switch (axis) {
    case PauliAxis::X: return {make_h(qubit)};
    case PauliAxis::Y: return {make_sdg(qubit), make_h(qubit)};
    case PauliAxis::Z: return {};
    case PauliAxis::I: break;
  }
  throw std::invalid_argument("no basis change for identity axis");
}

namespace {

void check_prep(const std::vector<Gate>& prep, uint32_t n_qubits) {
  for (const Gate& g : prep) {
    uint32_t top = gate_arity(g.kind) == 2 ? std::max(g.q0, g.q1) : g.q0;
    if (top >= n_qubits) {
      throw std::invalid_argument("prep gate acts outside the system register");
    }
  }
}

}  // namespace

DynamicCircuit build_random_pauli_circuit(uint32_t n_qubits,
                                          const std::vector<Gate>& prep,
                                          const std::vector<BasisProbabilities>& probs) {
  if (n_qubits == 0) {
    throw std::invalid_argument("circuit needs at least one system qubit");
  }
  if (probs.size() != n_qubits) {
    throw std::invalid_argument("need one basis distribution per qubit");
  }
  check_prep(prep, n_qubits);

  DynamicCircuit c;
  c.n_qubits = n_qubits + 1;  // scratch qubit at index n_qubits
  c.n_clbits = 3 * n_qubits;
  c.clbit_labels.resize(c.n_clbits);
  for (uint32_t i = 0; i < n_qubits; ++i) {
    c.clbit_labels[i] = store_z_label(i);
    c.clbit_labels[n_qubits + i] = store_xy_label(i);
    c.clbit_labels[2 * n_qubits + i] = result_label(i);
  }

  const uint32_t scratch = n_qubits;
  for (const Gate& g : prep) {
    c.instructions.push_back(g);
  }
  for (uint32_t i = 0; i < n_qubits; ++i) {
    SamplerAngles a = angles_for_distribution(probs[i]);
    c.instructions.push_back(make_ry(a.theta1, scratch));
    c.instructions.push_back(Measure{scratch, i});
    c.instructions.push_back(Reset{scratch});
    // The Store_XY draw must stay fair on the Store_Z = 1 branch, so the
    // biased rotation is gated on Store_Z = 0 unless it is fair already.
    if (probs[i].p_x == probs[i].p_y && probs[i].p_x > 0.0) {
      c.instructions.push_back(make_ry(a.theta2, scratch));
    } else {
      c.instructions.push_back(
          Conditional{{i}, {0}, {Instruction(make_ry(a.theta2, scratch))}});
      c.instructions.push_back(Conditional{{i}, {1}, {Instruction(make_h(scratch))}});
    }
    c.instructions.push_back(Measure{scratch, n_qubits + i});
    c.instructions.push_back(Reset{scratch});

    c.instructions.push_back(Conditional{
        {i, n_qubits + i}, {0, 0}, {Instruction(make_h(i))}});
    c.instructions.push_back(Conditional{
        {i, n_qubits + i}, {0, 1}, {Instruction(make_sdg(i)), Instruction(make_h(i))}});
  }
  for (uint32_t i = 0; i < n_qubits; ++i) {
    c.instructions.push_back(Measure{i, 2 * n_qubits + i});
  }
  return c;
}

void SlotSpec::validate() const {
  if (branch_gates.empty()) {
    throw std::invalid_argument("slot needs at least one branch");
  }
  if (probabilities.size() != branch_gates.size()) {
    throw std::invalid_argument("slot branch and probability counts differ");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("slot branch probability must be nonnegative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("slot branch probabilities must sum to 1");
  }
}

namespace {

uint32_t selector_depth(uint32_t branch_count) {
  uint32_t d = 0;
  while ((1u << d) < branch_count) ++d;
  return d;
}

// Leaf masses padded with zeros to 2^depth; returns subtree mass sums per
// node in heap order (node 1 = root).
std::vector<double> subtree_masses(const std::vector<double>& probs, uint32_t depth) {
  size_t leaves = size_t{1} << depth;
  std::vector<double> mass(2 * leaves, 0.0);
  for (size_t c = 0; c < probs.size(); ++c) {
    mass[leaves + c] = probs[c];
  }
  for (size_t node = leaves - 1; node >= 1; --node) {
    mass[node] = mass[2 * node] + mass[2 * node + 1];
  }
  return mass;
}

}  // namespace

DynamicCircuit build_slot_circuit(uint32_t n_qubits,
                                  const std::vector<Gate>& prep,
                                  const std::vector<SlotSpec>& slots) {
  if (n_qubits == 0) {
    throw std::invalid_argument("circuit needs at least one system qubit");
  }
  check_prep(prep, n_qubits);
  for (const SlotSpec& s : slots) {
    s.validate();
    for (const auto& branch : s.branch_gates) {
      check_prep(branch, n_qubits);
    }
  }

  std::vector<uint32_t> depth(slots.size());
  uint32_t selector_total = 0;
  for (size_t j = 0; j < slots.size(); ++j) {
    depth[j] = selector_depth(slots[j].branch_count());
    selector_total += depth[j];
  }

  DynamicCircuit c;
  c.n_qubits = n_qubits + 1;
  c.n_clbits = selector_total + n_qubits;
  c.clbit_labels.resize(c.n_clbits);
  {
    uint32_t bit = 0;
    for (size_t j = 0; j < slots.size(); ++j) {
      for (uint32_t k = 0; k < depth[j]; ++k) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "Sel[%zu][%u]", j, k);
        c.clbit_labels[bit++] = buf;
      }
    }
    for (uint32_t i = 0; i < n_qubits; ++i) {
      c.clbit_labels[selector_total + i] = result_label(i);
    }
  }

  const uint32_t scratch = n_qubits;
  for (const Gate& g : prep) {
    c.instructions.push_back(g);
  }

  uint32_t bit_base = 0;
  for (size_t j = 0; j < slots.size(); ++j) {
    const SlotSpec& slot = slots[j];
    const uint32_t d = depth[j];
    if (d > 0) {
      std::vector<double> mass = subtree_masses(slot.probabilities, d);
      for (uint32_t level = 0; level < d; ++level) {
        // One scratch draw per level; the rotation angle depends on the
        // selector prefix, so deeper levels condition the RY on earlier bits.
        uint32_t nodes = 1u << level;
        for (uint32_t path = 0; path < nodes; ++path) {
          size_t node = nodes + path;
          if (mass[node] <= 0.0) continue;
          double p_right = mass[2 * node + 1] / mass[node];
          double angle = 2.0 * std::asin(clamped_sqrt(p_right));
          if (angle == 0.0) continue;
          Gate ry = make_ry(angle, scratch);
          if (level == 0) {
            c.instructions.push_back(ry);
          } else {
            Conditional cond;
            for (uint32_t k = 0; k < level; ++k) {
              cond.bits.push_back(bit_base + k);
              cond.values.push_back(static_cast<uint8_t>((path >> (level - 1 - k)) & 1u));
            }
            cond.body.push_back(Instruction(ry));
            c.instructions.push_back(std::move(cond));
          }
        }
        c.instructions.push_back(Measure{scratch, bit_base + level});
        c.instructions.push_back(Reset{scratch});
      }
      for (uint32_t branch = 0; branch < slot.branch_count(); ++branch) {
        if (slot.branch_gates[branch].empty() || slot.probabilities[branch] <= 0.0) continue;
        Conditional cond;
        for (uint32_t k = 0; k < d; ++k) {
          cond.bits.push_back(bit_base + k);
          cond.values.push_back(static_cast<uint8_t>((branch >> (d - 1 - k)) & 1u));
        }
        for (const Gate& g : slot.branch_gates[branch]) {
          cond.body.push_back(Instruction(g));
        }
        c.instructions.push_back(std::move(cond));
      }
    } else {
      for (const Gate& g : slot.branch_gates[0]) {
        c.instructions.push_back(g);
      }
    }
    bit_base += d;
  }

  for (uint32_t i = 0; i < n_qubits; ++i) {
    c.instructions.push_back(Measure{i, selector_total + i});
  }
  return c;
}

DynamicCircuit build_static_shadow_circuit(const BasisVector& basis,
                                           const std::vector<Gate>& prep) {
  uint32_t n = basis.n_qubits();
  if (n == 0) {
    throw std::invalid_argument("circuit needs at least one system qubit");
  }
  check_prep(prep, n);

  DynamicCircuit c;
  c.n_qubits = n;
  c.n_clbits = n;
  c.clbit_labels.resize(n);
  for (uint32_t i = 0; i < n; ++i) {
    c.clbit_labels[i] = result_label(i);
  }
  for (const Gate& g : prep) {
    c.instructions.push_back(g);
  }
  for (uint32_t i = 0; i < n; ++i) {
    for (const Gate& g : basis_change_gates(basis.at(i), i)) {
      c.instructions.push_back(g);
    }
  }
  for (uint32_t i = 0; i < n; ++i) {
    c.instructions.push_back(Measure{i, i});
  }
  return c;
}

namespace {

void note(std::vector<std::string>& out, size_t idx, const std::string& msg) {
  out.push_back("instruction " + std::to_string(idx) + ": " + msg);
}

void validate_gate(const Gate& g, uint32_t n_qubits, size_t idx,
                   std::vector<std::string>& out) {
  if (g.q0 >= n_qubits) {
    note(out, idx, std::string(gate_name(g.kind)) + " qubit " + std::to_string(g.q0) +
                       " out of range (n_qubits=" + std::to_string(n_qubits) + ")");
  }
  if (gate_arity(g.kind) == 2) {
    if (g.q1 >= n_qubits) {
      note(out, idx, std::string(gate_name(g.kind)) + " qubit " + std::to_string(g.q1) +
                         " out of range (n_qubits=" + std::to_string(n_qubits) + ")");
    }
    if (g.q0 == g.q1) {
      note(out, idx, "cx control and target coincide");
    }
  }
  if (g.kind == GateKind::RY && !std::isfinite(g.angle)) {
    note(out, idx, "ry angle is not finite");
  }
}

}  // namespace

std::vector<std::string> validate_circuit(const DynamicCircuit& c) {
  std::vector<std::string> out;
  if (!c.clbit_labels.empty() && c.clbit_labels.size() != c.n_clbits) {
    out.push_back("clbit_labels size " + std::to_string(c.clbit_labels.size()) +
                  " does not match n_clbits=" + std::to_string(c.n_clbits));
  }
  {
    std::set<std::string> seen;
    for (const auto& label : c.clbit_labels) {
      if (label.empty()) continue;
      if (!seen.insert(label).second) {
        out.push_back("duplicate clbit label '" + label + "'");
      }
    }
  }
  for (size_t idx = 0; idx < c.instructions.size(); ++idx) {
    const Instruction& ins = c.instructions[idx];
    if (const Gate* g = std::get_if<Gate>(&ins.op)) {
      validate_gate(*g, c.n_qubits, idx, out);
    } else if (const Measure* m = std::get_if<Measure>(&ins.op)) {
      if (m->qubit >= c.n_qubits) {
        note(out, idx, "measure qubit " + std::to_string(m->qubit) + " out of range");
      }
      if (m->clbit >= c.n_clbits) {
        note(out, idx, "measure clbit " + std::to_string(m->clbit) + " out of range");
      }
    } else if (const Reset* r = std::get_if<Reset>(&ins.op)) {
      if (r->qubit >= c.n_qubits) {
        note(out, idx, "reset qubit " + std::to_string(r->qubit) + " out of range");
      }
    } else if (const Conditional* cond = std::get_if<Conditional>(&ins.op)) {
      if (cond->bits.empty()) {
        note(out, idx, "conditional has no condition bits");
      }
      if (cond->bits.size() != cond->values.size()) {
        note(out, idx, "conditional bits/values lengths differ");
      }
      for (uint32_t b : cond->bits) {
        if (b >= c.n_clbits) {
          note(out, idx, "conditional bit " + std::to_string(b) + " out of range");
        }
      }
      for (uint8_t v : cond->values) {
        if (v > 1) {
          note(out, idx, "conditional value must be 0 or 1");
        }
      }
      for (const Instruction& body_ins : cond->body) {
        if (const Gate* g = std::get_if<Gate>(&body_ins.op)) {
          validate_gate(*g, c.n_qubits, idx, out);
        } else if (std::holds_alternative<Measure>(body_ins.op)) {
          note(out, idx, "conditional body may not contain measurements");
        } else if (std::holds_alternative<Reset>(body_ins.op)) {
          note(out, idx, "conditional body may not contain resets");
        } else {
          note(out, idx, "conditional body may not contain nested conditionals");
        }
      }
    }
  }
  return out;
}

}  // namespace dynshadow
