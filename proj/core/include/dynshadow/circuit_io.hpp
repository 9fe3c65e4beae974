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

#ifndef DYNSHADOW_CIRCUIT_IO_HPP
#define DYNSHADOW_CIRCUIT_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "dynshadow/circuit.hpp"

namespace dynshadow {

/// Line-oriented text form. Example:
///
///   dynshadow-circuit 1
///   qubits 2
///   clbits 3
///   label 0 Store_Z[0]
///   ry 1.2309594173407747 1
///   measure 1 0
///   reset 1
///   if 0=0 1=1 {
///     sdg 0
///     h 0
///   }
///   measure 0 2
///
/// Gates are "<name> <qubit>", "ry <angle> <qubit>" (17 significant digits),
/// or "cx <control> <target>". Conditional bodies are indented two spaces.
/// Unnamed classical bits get no label line. Serialization is canonical:
/// deserialize(serialize(c)) reproduces c and serialize(deserialize(s))
/// reproduces s byte for byte.
std::string serialize_circuit(const DynamicCircuit& c);

/// Throws std::invalid_argument with a line number on malformed input.
DynamicCircuit deserialize_circuit(std::string_view text);

/// Atomic file variants (write to a temporary, then rename).
void write_circuit_file(const DynamicCircuit& c, const std::string& path);
DynamicCircuit read_circuit_file(const std::string& path);

/// Compact gate-list syntax for command lines:
///   "x0,h1,sdg2"        one-qubit gates, gate name then qubit index
///   "x0..3"             the same gate on an inclusive index range
///   "ry(0.5)2"          RY with its angle in parentheses
///   "cx0:1"             CX control:target
/// Items are comma separated and applied left to right. Indices must be
/// below n_qubits. Throws std::invalid_argument on syntax errors.
std::vector<Gate> parse_gate_spec(std::string_view spec, uint32_t n_qubits);

}  // namespace dynshadow

#endif  // DYNSHADOW_CIRCUIT_IO_HPP
