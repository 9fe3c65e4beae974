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

#include "dynshadow/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dynshadow {

char axis_to_char(PauliAxis a) {
  switch (a) {
    case PauliAxis::I: return 'I';
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  throw std::invalid_argument("invalid PauliAxis value");
}

PauliAxis axis_from_char(char c) {
  switch (c) {
    case 'I': return PauliAxis::I;
    case 'X': return PauliAxis::X;
    case 'Y': return PauliAxis::Y;
    case 'Z': return PauliAxis::Z;
    default:
      throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(uint32_t n_qubits, std::vector<Letter> letters)
    : n_qubits_(n_qubits) {
  letters_.reserve(letters.size());
  for (const auto& [q, a] : letters) {
    if (q >= n_qubits) {
      throw std::invalid_argument("Pauli letter qubit index out of range");
    }
    if (a != PauliAxis::I) {
      letters_.emplace_back(q, a);
    }
  }
  std::sort(letters_.begin(), letters_.end(),
            [](const Letter& l, const Letter& r) { return l.first < r.first; });
  for (size_t i = 1; i < letters_.size(); ++i) {
    if (letters_[i].first == letters_[i - 1].first) {
      throw std::invalid_argument("duplicate qubit in Pauli letters");
    }
  }
}

PauliAxis PauliString::axis_at(uint32_t qubit) const {
  auto it = std::lower_bound(
      letters_.begin(), letters_.end(), qubit,
      [](const Letter& l, uint32_t q) { return l.first < q; });
  if (it != letters_.end() && it->first == qubit) {
    return it->second;
  }
  return PauliAxis::I;
}

PauliString parse_pauli(std::string_view text, uint32_t n_qubits) {
  if (text.size() != n_qubits) {
    throw std::invalid_argument("Pauli word length does not match qubit count");
  }
  std::vector<PauliString::Letter> letters;
  for (uint32_t q = 0; q < n_qubits; ++q) {
    PauliAxis a = axis_from_char(text[q]);
    if (a != PauliAxis::I) {
      letters.emplace_back(q, a);
    }
  }
  return PauliString(n_qubits, std::move(letters));
}

std::string format_pauli(const PauliString& p) {
  std::string out(p.n_qubits(), 'I');
  for (const auto& [q, a] : p.letters()) {
    out[q] = axis_to_char(a);
  }
  return out;
}

std::vector<uint8_t> parse_bits(std::string_view text) {
  std::vector<uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      bits.push_back(0);
    } else if (c == '1') {
      bits.push_back(1);
    } else {
      throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
  }
  return bits;
}

std::string format_bits(const std::vector<uint8_t>& bits) {
  std::string out;
  out.reserve(bits.size());
  for (uint8_t b : bits) {
    out.push_back(b ? '1' : '0');
  }
  return out;
}

double expect_on_basis_state(const PauliString& p, const std::vector<uint8_t>& bits) {
  if (bits.size() != p.n_qubits()) {
    throw std::invalid_argument("bit string length does not match Pauli register");
  }
  double value = 1.0;
  for (const auto& [q, a] : p.letters()) {
    if (a != PauliAxis::Z) {
      return 0.0;
    }
    if (bits[q]) {
      value = -value;
    }
  }
  return value;
}

Hamiltonian::Hamiltonian(uint32_t n_qubits, std::vector<HamiltonianTerm> terms)
    : n_qubits_(n_qubits) {
  std::map<std::string, double> merged;
  std::vector<std::string> order;
  for (const auto& t : terms) {
    if (t.op.n_qubits() != n_qubits) {
      throw std::invalid_argument("Hamiltonian term register size mismatch");
    }
    if (!std::isfinite(t.coefficient)) {
      throw std::invalid_argument("Hamiltonian coefficient must be finite");
    }
    std::string key = format_pauli(t.op);
    auto [it, inserted] = merged.emplace(key, t.coefficient);
    if (inserted) {
      order.push_back(key);
    } else {
      it->second += t.coefficient;
    }
  }
  for (const auto& key : order) {
    double c = merged.at(key);
    if (c != 0.0) {
      terms_.push_back({c, parse_pauli(key, n_qubits)});
    }
  }
  if (terms_.empty()) {
    throw std::invalid_argument("Hamiltonian must have at least one nonzero term");
  }
}

double exact_energy_on_basis_state(const Hamiltonian& h, const std::vector<uint8_t>& bits) {
  double energy = 0.0;
  for (const auto& t : h.terms()) {
    energy += t.coefficient * expect_on_basis_state(t.op, bits);
  }
  return energy;
}

Hamiltonian parse_hamiltonian(std::istream& in) {
  std::vector<HamiltonianTerm> terms;
  std::vector<std::pair<double, std::string>> raw;
  size_t word_len = 0;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string coeff_text, word, extra;
    if (!(fields >> coeff_text)) {
      continue;
    }
    if (!(fields >> word)) {
      throw std::invalid_argument("Hamiltonian line " + std::to_string(line_no) +
                                  ": expected '<coefficient> <pauli word>'");
    }
    if (fields >> extra) {
      throw std::invalid_argument("Hamiltonian line " + std::to_string(line_no) +
                                  ": trailing content after Pauli word");
    }
    double coeff;
    try {
      size_t used = 0;
      coeff = std::stod(coeff_text, &used);
      if (used != coeff_text.size()) {
        throw std::invalid_argument("partial parse");
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("Hamiltonian line " + std::to_string(line_no) +
                                  ": bad coefficient '" + coeff_text + "'");
    }
    if (word_len == 0) {
      word_len = word.size();
    } else if (word.size() != word_len) {
      throw std::invalid_argument("Hamiltonian line " + std::to_string(line_no) +
                                  ": inconsistent Pauli word length");
    }
    raw.emplace_back(coeff, word);
  }
  if (raw.empty()) {
    throw std::invalid_argument("Hamiltonian text contains no terms");
  }
  uint32_t n_qubits = static_cast<uint32_t>(word_len);
  for (auto& [coeff, word] : raw) {
    terms.push_back({coeff, parse_pauli(word, n_qubits)});
  }
  return Hamiltonian(n_qubits, std::move(terms));
}

Hamiltonian parse_hamiltonian_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_hamiltonian(in);
}

Hamiltonian parse_hamiltonian_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open Hamiltonian file: " + path);
  }
  return parse_hamiltonian(in);
}

std::string format_hamiltonian(const Hamiltonian& h) {
  std::string out;
  char buf[64];
  for (const auto& t : h.terms()) {
    std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
    out += buf;
    out += ' ';
    out += format_pauli(t.op);
    out += '\n';
  }
  return out;
}

BasisVector::BasisVector(std::vector<PauliAxis> axes) : axes_(std::move(axes)) {
  for (PauliAxis a : axes_) {
    if (a == PauliAxis::I) {
      throw std::invalid_argument("measurement basis must assign X, Y, or Z to every qubit");
    }
  }
}

std::string BasisVector::to_word() const {
  std::string out;
  out.reserve(axes_.size());
  for (PauliAxis a : axes_) {
    out.push_back(axis_to_char(a));
  }
  return out;
}

BasisVector BasisVector::from_word(std::string_view word) {
  std::vector<PauliAxis> axes;
  axes.reserve(word.size());
  for (char c : word) {
    axes.push_back(axis_from_char(c));
  }
  return BasisVector(std::move(axes));
}

}  // namespace dynshadow
