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

#ifndef DYNSHADOW_CIRCUIT_HPP
#define DYNSHADOW_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dynshadow/pauli.hpp"

namespace dynshadow {

enum class GateKind : uint8_t { H, S, Sdg, X, Z, RY, CX };

const char* gate_name(GateKind k);
GateKind gate_from_name(std::string_view name);
uint32_t gate_arity(GateKind k);
bool gate_is_clifford(GateKind k);

/// A single gate application. q1 is used only by CX (q0 = control,
/// q1 = target); angle only by RY.
struct Gate {
  GateKind kind = GateKind::H;
  uint32_t q0 = 0;
  uint32_t q1 = 0;
  double angle = 0.0;

  bool operator==(const Gate&) const = default;
};

Gate make_h(uint32_t q);
Gate make_s(uint32_t q);
Gate make_sdg(uint32_t q);
Gate make_x(uint32_t q);
Gate make_z(uint32_t q);
Gate make_ry(double angle, uint32_t q);
Gate make_cx(uint32_t control, uint32_t target);

/// Projective Z measurement of `qubit`, storing the outcome in classical
/// bit `clbit`. If a readout error model is active at run time, the stored
/// bit (not the post-measurement state) may be flipped.
struct Measure {
  uint32_t qubit = 0;
  uint32_t clbit = 0;

  bool operator==(const Measure&) const = default;
};

/// Measures `qubit` and applies X when the outcome is 1, returning it
/// to |0>. No classical bit is written.
struct Reset {
  uint32_t qubit = 0;

  bool operator==(const Reset&) const = default;
};

struct Instruction;

/// A gate block executed only when every listed classical bit currently
/// holds its paired value. Bodies may contain gates only; nested
/// measurements, resets, and conditionals are rejected by validation.
struct Conditional {
  std::vector<uint32_t> bits;
  std::vector<uint8_t> values;
  std::vector<Instruction> body;

  bool operator==(const Conditional&) const;
};

struct Instruction {
  std::variant<Gate, Measure, Reset, Conditional> op;

  Instruction(Gate g) : op(g) {}
  Instruction(Measure m) : op(m) {}
  Instruction(Reset r) : op(r) {}
  Instruction(Conditional c) : op(std::move(c)) {}

  bool operator==(const Instruction&) const = default;
};

/// A dynamic circuit: a quantum register, a classical register with optional
/// per-bit labels, and a straight-line instruction list in which conditionals
/// provide classical feedback.
struct DynamicCircuit {
  uint32_t n_qubits = 0;
  uint32_t n_clbits = 0;
  std::vector<std::string> clbit_labels;  // size n_clbits; "" = unnamed
  std::vector<Instruction> instructions;

  bool operator==(const DynamicCircuit&) const = default;
};

/// Structural checks: index ranges, label vector size, conditional bodies
/// free of measurements/resets/nesting, matched bits/values lengths, RY
/// angles finite, CX control != target. Returns one human-readable
/// diagnostic per problem; empty means the circuit is well formed.
std::vector<std::string> validate_circuit(const DynamicCircuit& c);

/// Per-qubit sampling weights for the three measurement bases.
struct BasisProbabilities {
  double p_x = 0.0;
  double p_y = 0.0;
  double p_z = 0.0;

  static BasisProbabilities uniform() { return {1.0 / 3, 1.0 / 3, 1.0 / 3}; }

  double prob(PauliAxis a) const;

  /// Throws unless all three entries are nonnegative and sum to 1 within 1e-9.
  void validate() const;

  bool operator==(const BasisProbabilities&) const = default;
};

/// Independent per-qubit classical bit-flip noise applied to measurement
/// records. flip_probability[q] must lie in [0, 0.5).
struct ReadoutErrorModel {
  std::vector<double> flip_probability;

  static ReadoutErrorModel uniform(uint32_t n_qubits, double e);

  double at(uint32_t qubit) const { return flip_probability.at(qubit); }
  void validate() const;

  bool operator==(const ReadoutErrorModel&) const = default;
};

/// RY angles for the two-measurement sampler chain that draws one of three
/// basis choices with probabilities (p_x, p_y, p_z):
///   theta1 = 2*arccos(sqrt(p_x + p_y)), measured bit 1 selects Z;
///   theta2 = 2*arccos(sqrt(p_x / (p_x + p_y))), measured bit 0 selects X.
/// theta2 is 0 when p_x + p_y == 0 (the second draw is then irrelevant).
struct SamplerAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

SamplerAngles angles_for_distribution(const BasisProbabilities& p);

/// Classical-register naming used by the shadow circuits. For a system of n
/// qubits the register holds 3n bits: Store_Z[i] at index i, Store_XY[i] at
/// index n+i, Result[i] at index 2n+i.
std::string store_z_label(uint32_t qubit);
std::string store_xy_label(uint32_t qubit);
std::string result_label(uint32_t qubit);

/// Builds the single dynamic circuit that performs randomized Pauli-basis
/// measurement on every qubit:
///  1. state preparation `prep` on the system register,
///  2. per qubit, a two-step sampler on a scratch qubit (RY, measure into
///     Store_Z, reset, RY, measure into Store_XY, reset),
///  3. per qubit, feedback rotating the system qubit into the drawn basis
///     ((Store_Z,Store_XY) = (0,0) -> H for X; (0,1) -> Sdg,H for Y;
///     (1,*) -> identity for Z),
///  4. Z measurement of every system qubit into Result.
/// The scratch qubit is appended at index n_qubits and reused via reset.
/// probs.size() must be n_qubits (one distribution per qubit).
DynamicCircuit build_random_pauli_circuit(uint32_t n_qubits,
                                          const std::vector<Gate>& prep,
                                          const std::vector<BasisProbabilities>& probs);

/// One randomized slot: branch j (drawn with probabilities[j]) applies
/// branch_gates[j] to the system register.
struct SlotSpec {
  std::vector<std::vector<Gate>> branch_gates;
  std::vector<double> probabilities;

  uint32_t branch_count() const { return static_cast<uint32_t>(branch_gates.size()); }
  void validate() const;
};

/// Generalizes the random-Pauli construction to arbitrary randomized gate
/// slots. Slot j draws ceil(log2 C_j) selector bits from a scratch-qubit
/// measurement tree (labels "Sel[j][k]", most significant bit first) and
/// branches on them with conditionals; a final Z measurement of every system
/// qubit fills Result. Branch indices past branch_count() are unreachable
/// because the tree assigns them probability 0.
DynamicCircuit build_slot_circuit(uint32_t n_qubits,
                                  const std::vector<Gate>& prep,
                                  const std::vector<SlotSpec>& slots);

/// The non-dynamic counterpart of one shadow shot: prep, then the fixed
/// basis-change layer for `basis`, then Z measurements into Result. Used to
/// model the compile-per-shot strategy.
DynamicCircuit build_static_shadow_circuit(const BasisVector& basis,
                                           const std::vector<Gate>& prep);

/// Gates that rotate one qubit from the given Pauli eigenbasis into the
/// computational basis: X -> {H}, Y -> {Sdg, H}, Z -> {}.
std::vector<Gate> basis_change_gates(PauliAxis axis, uint32_t qubit);

}  // namespace dynshadow

#endif  // DYNSHADOW_CIRCUIT_HPP
