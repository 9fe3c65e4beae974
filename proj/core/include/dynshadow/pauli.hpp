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

#ifndef DYNSHADOW_PAULI_HPP
#define DYNSHADOW_PAULI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dynshadow {

enum class PauliAxis : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_to_char(PauliAxis a);

/// Accepts 'I', 'X', 'Y', 'Z' (upper case only). Throws std::invalid_argument.
PauliAxis axis_from_char(char c);

/// An n-qubit Pauli word with sparse storage.
///
/// Text convention: the leftmost character acts on qubit 0, so "XIZ" is X on
/// qubit 0 and Z on qubit 2. Identity letters are never stored; `letters()`
/// is sorted by qubit index and contains only X/Y/Z entries.
class PauliString {
 public:
  using Letter = std::pair<uint32_t, PauliAxis>;

  PauliString() = default;
  explicit PauliString(uint32_t n_qubits) : n_qubits_(n_qubits) {}

  /// Letters may arrive in any order; I entries are dropped. Throws on a
  /// qubit index out of range or listed twice with conflicting axes.
  PauliString(uint32_t n_qubits, std::vector<Letter> letters);

  uint32_t n_qubits() const { return n_qubits_; }
  const std::vector<Letter>& letters() const { return letters_; }

  PauliAxis axis_at(uint32_t qubit) const;
  bool is_identity() const { return letters_.empty(); }
  size_t weight() const { return letters_.size(); }

  bool operator==(const PauliString&) const = default;

 private:
  uint32_t n_qubits_ = 0;
  std::vector<Letter> letters_;
};

/// Parses a dense word such as "XIZY". The text length must equal n_qubits.
PauliString parse_pauli(std::string_view text, uint32_t n_qubits);

/// Dense text form, one character per qubit.
std::string format_pauli(const PauliString& p);

/// "0110" -> {0,1,1,0}; qubit 0 is the leftmost character.
std::vector<uint8_t> parse_bits(std::string_view text);
std::string format_bits(const std::vector<uint8_t>& bits);

/// <p|P|p> for the computational product state |p> described by `bits`.
/// Z letters contribute (-1)^bit, X/Y letters force the result to 0, and the
/// identity contributes 1. bits.size() must equal p.n_qubits().
double expect_on_basis_state(const PauliString& p, const std::vector<uint8_t>& bits);

struct HamiltonianTerm {
  double coefficient = 0.0;
  PauliString op;
};

/// A real linear combination of Pauli words on a fixed register size.
/// Duplicate words are merged at construction; zero-coefficient terms are
/// kept only if they were explicitly present after merging (coefficient sums
/// to zero drop the term).
class Hamiltonian {
 public:
  Hamiltonian(uint32_t n_qubits, std::vector<HamiltonianTerm> terms);

  uint32_t n_qubits() const { return n_qubits_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }

 private:
  uint32_t n_qubits_ = 0;
  std::vector<HamiltonianTerm> terms_;
};

double exact_energy_on_basis_state(const Hamiltonian& h, const std::vector<uint8_t>& bits);

/// Text format: one term per line, "<coefficient> <pauli word>", '#' starts a
/// comment, blank lines are skipped. Every word must have the same length,
/// which fixes the register size. Throws std::invalid_argument on malformed
/// input or when no terms are present.
Hamiltonian parse_hamiltonian(std::istream& in);
Hamiltonian parse_hamiltonian_text(std::string_view text);
Hamiltonian parse_hamiltonian_file(const std::string& path);

/// One "<coefficient> <word>" line per term, 17 significant digits.
std::string format_hamiltonian(const Hamiltonian& h);

/// A full measurement-basis assignment: one of X/Y/Z for every qubit.
class BasisVector {
 public:
  BasisVector() = default;
  explicit BasisVector(std::vector<PauliAxis> axes);

  uint32_t n_qubits() const { return static_cast<uint32_t>(axes_.size()); }
  const std::vector<PauliAxis>& axes() const { return axes_; }
  PauliAxis at(uint32_t qubit) const { return axes_.at(qubit); }

  std::string to_word() const;
  static BasisVector from_word(std::string_view word);

  bool operator==(const BasisVector&) const = default;

 private:
  std::vector<PauliAxis> axes_;
};

}  // namespace dynshadow

#endif  // DYNSHADOW_PAULI_HPP
