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

#include "dynshadow/circuit_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "dynshadow/fsio.hpp"

namespace dynshadow {

namespace {

constexpr std::string_view kMagic = "dynshadow-circuit";
constexpr int kFormatVersion = 1;

void append_angle(std::string& out, double angle) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", angle);
  out += buf;
}

void append_gate(std::string& out, const Gate& g) {
  out += gate_name(g.kind);
  if (g.kind == GateKind::RY) {
    out += ' ';
    append_angle(out, g.angle);
  }
  out += ' ';
  out += std::to_string(g.q0);
  if (gate_arity(g.kind) == 2) {
    out += ' ';
    out += std::to_string(g.q1);
  }
  out += '\n';
}

class LineParser {
 public:
  explicit LineParser(std::string_view text) : in_(std::string(text)) {}

  // Returns false at end of input. Skips nothing: every line is significant.
  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("circuit text line " + std::to_string(line_no_) + ": " + msg);
  }

 private:
  std::istringstream in_;
  size_t line_no_ = 0;
};

uint32_t to_u32(LineParser& p, std::string_view tok, const char* what) {
  uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    p.fail(std::string("bad ") + what + " '" + std::string(tok) + "'");
  }
  return v;
}

double to_f64(LineParser& p, std::string_view tok, const char* what) {
  try {
    size_t used = 0;
    double v = std::stod(std::string(tok), &used);
    if (used != tok.size()) throw std::invalid_argument("partial");
    return v;
  } catch (const std::exception&) {
    p.fail(std::string("bad ") + what + " '" + std::string(tok) + "'");
  }
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    size_t start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// Parses one gate/measure/reset line (already split into tokens).
Instruction parse_simple(LineParser& p, const std::vector<std::string_view>& tok) {
  if (tok[0] == "measure") {
    if (tok.size() != 3) p.fail("measure expects '<qubit> <clbit>'");
    return Measure{to_u32(p, tok[1], "qubit"), to_u32(p, tok[2], "clbit")};
  }
  if (tok[0] == "reset") {
    if (tok.size() != 2) p.fail("reset expects '<qubit>'");
    return Reset{to_u32(p, tok[1], "qubit")};
  }
  GateKind kind;
  try {
    kind = gate_from_name(tok[0]);
  } catch (const std::invalid_argument& e) {
    p.fail(e.what());
    throw;
  }
  if (kind == GateKind::RY) {
    if (tok.size() != 3) p.fail("ry expects '<angle> <qubit>'");
    return make_ry(to_f64(p, tok[1], "angle"), to_u32(p, tok[2], "qubit"));
  }
  if (kind == GateKind::CX) {
    if (tok.size() != 3) p.fail("cx expects '<control> <target>'");
    return make_cx(to_u32(p, tok[1], "control"), to_u32(p, tok[2], "target"));
  }
  if (tok.size() != 2) p.fail(std::string(tok[0]) + " expects '<qubit>'");
  return Gate{kind, to_u32(p, tok[1], "qubit"), 0, 0.0};
}

}  // namespace

std::string serialize_circuit(const DynamicCircuit& c) {
  std::string out;
  out += kMagic;
  out += ' ';
  out += std::to_string(kFormatVersion);
  out += '\n';
  out += "qubits " + std::to_string(c.n_qubits) + '\n';
  out += "clbits " + std::to_string(c.n_clbits) + '\n';
  for (size_t i = 0; i < c.clbit_labels.size(); ++i) {
    if (c.clbit_labels[i].empty()) continue;
    out += "label " + std::to_string(i) + ' ' + c.clbit_labels[i] + '\n';
  }
  for (const Instruction& ins : c.instructions) {
    if (const Gate* g = std::get_if<Gate>(&ins.op)) {
      append_gate(out, *g);
    } else if (const Measure* m = std::get_if<Measure>(&ins.op)) {
      out += "measure " + std::to_string(m->qubit) + ' ' + std::to_string(m->clbit) + '\n';
    } else if (const Reset* r = std::get_if<Reset>(&ins.op)) {
      out += "reset " + std::to_string(r->qubit) + '\n';
    } else if (const Conditional* cond = std::get_if<Conditional>(&ins.op)) {
      out += "if";
      for (size_t i = 0; i < cond->bits.size(); ++i) {
        out += ' ' + std::to_string(cond->bits[i]) + '=' +
               std::to_string(static_cast<int>(cond->values[i]));
      }
      out += " {\n";
      for (const Instruction& body_ins : cond->body) {
        const Gate* g = std::get_if<Gate>(&body_ins.op);
        if (g == nullptr) {
          throw std::invalid_argument("cannot serialize a conditional with non-gate body");
        }
        out += "  ";
        append_gate(out, *g);
      }
      out += "}\n";
    }
  }
  return out;
}

DynamicCircuit deserialize_circuit(std::string_view text) {
  LineParser p(text);
  std::string line;

  if (!p.next(line)) p.fail("empty input");
  {
    auto tok = split_ws(line);
    if (tok.size() != 2 || tok[0] != kMagic) {
      p.fail("expected header '" + std::string(kMagic) + " <version>'");
    }
    if (to_u32(p, tok[1], "version") != kFormatVersion) {
      p.fail("unsupported format version");
    }
  }

  DynamicCircuit c;
  if (!p.next(line)) p.fail("missing 'qubits' line");
  {
    auto tok = split_ws(line);
    if (tok.size() != 2 || tok[0] != "qubits") p.fail("expected 'qubits <n>'");
    c.n_qubits = to_u32(p, tok[1], "qubit count");
  }
  if (!p.next(line)) p.fail("missing 'clbits' line");
  {
    auto tok = split_ws(line);
    if (tok.size() != 2 || tok[0] != "clbits") p.fail("expected 'clbits <n>'");
    c.n_clbits = to_u32(p, tok[1], "clbit count");
  }
  c.clbit_labels.resize(c.n_clbits);

  Conditional pending;
  bool in_conditional = false;
  while (p.next(line)) {
    if (line.empty()) p.fail("blank lines are not allowed");
    if (in_conditional) {
      if (line == "}") {
        c.instructions.push_back(std::move(pending));
        pending = Conditional{};
        in_conditional = false;
        continue;
      }
      if (line.size() < 3 || line[0] != ' ' || line[1] != ' ' || line[2] == ' ') {
        p.fail("conditional body lines must be indented two spaces");
      }
      auto tok = split_ws(line);
      Instruction ins = parse_simple(p, tok);
      if (!std::holds_alternative<Gate>(ins.op)) {
        p.fail("conditional body may contain gates only");
      }
      pending.body.push_back(std::move(ins));
      continue;
    }
    auto tok = split_ws(line);
    if (tok.empty()) p.fail("blank lines are not allowed");
    if (tok[0] == "label") {
      if (tok.size() < 3) p.fail("label expects '<index> <name>'");
      uint32_t idx = to_u32(p, tok[1], "label index");
      if (idx >= c.n_clbits) p.fail("label index out of range");
      auto pos = line.find(tok[1]);
      pos = line.find(' ', pos);
      c.clbit_labels[idx] = line.substr(pos + 1);
      continue;
    }
    if (tok[0] == "if") {
      if (tok.size() < 3 || tok.back() != "{") {
        p.fail("conditional expects 'if <bit>=<val> ... {'");
      }
      pending = Conditional{};
      for (size_t i = 1; i + 1 < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string_view::npos) p.fail("condition must look like '<bit>=<val>'");
        pending.bits.push_back(to_u32(p, tok[i].substr(0, eq), "condition bit"));
        uint32_t v = to_u32(p, tok[i].substr(eq + 1), "condition value");
        if (v > 1) p.fail("condition value must be 0 or 1");
        pending.values.push_back(static_cast<uint8_t>(v));
      }
      in_conditional = true;
      continue;
    }
    c.instructions.push_back(parse_simple(p, tok));
  }
  if (in_conditional) p.fail("unterminated conditional block");
  return c;
}

void write_circuit_file(const DynamicCircuit& c, const std::string& path) {
  write_text_file_atomic(path, serialize_circuit(c));
}

DynamicCircuit read_circuit_file(const std::string& path) {
  return deserialize_circuit(read_text_file(path));
}

namespace {

uint32_t spec_u32(std::string_view item, size_t& pos) {
  size_t start = pos;
  while (pos < item.size() && item[pos] >= '0' && item[pos] <= '9') ++pos;
  if (pos == start) {
    throw std::invalid_argument("gate spec: expected index in '" + std::string(item) + "'");
  }
  uint32_t v = 0;
  std::from_chars(item.data() + start, item.data() + pos, v);
  return v;
}

}  // namespace

std::vector<Gate> parse_gate_spec(std::string_view spec, uint32_t n_qubits) {
  std::vector<Gate> gates;
  auto check = [&](uint32_t q, std::string_view item) {
    if (q >= n_qubits) {
      throw std::invalid_argument("gate spec: qubit " + std::to_string(q) +
                                  " out of range in '" + std::string(item) + "'");
    }
  };
  size_t start = 0;
  while (start <= spec.size()) {
    size_t comma = spec.find(',', start);
    std::string_view item = spec.substr(
        start, comma == std::string_view::npos ? spec.size() - start : comma - start);
    start = comma == std::string_view::npos ? spec.size() + 1 : comma + 1;
    if (item.empty()) {
      if (comma == std::string_view::npos && gates.empty() && spec.empty()) break;
      throw std::invalid_argument("gate spec: empty item");
    }
    size_t pos = 0;
    while (pos < item.size() && std::isalpha(static_cast<unsigned char>(item[pos]))) ++pos;
    std::string_view name = item.substr(0, pos);
    GateKind kind = gate_from_name(name);
    if (kind == GateKind::RY) {
      if (pos >= item.size() || item[pos] != '(') {
        throw std::invalid_argument("gate spec: ry needs '(angle)' in '" + std::string(item) + "'");
      }
      size_t close = item.find(')', pos);
      if (close == std::string_view::npos) {
        throw std::invalid_argument("gate spec: unterminated '(' in '" + std::string(item) + "'");
      }
      double angle;
      try {
        size_t used = 0;
        angle = std::stod(std::string(item.substr(pos + 1, close - pos - 1)), &used);
        if (used != close - pos - 1) throw std::invalid_argument("partial");
      } catch (const std::exception&) {
        throw std::invalid_argument("gate spec: bad angle in '" + std::string(item) + "'");
      }
      pos = close + 1;
      uint32_t q = spec_u32(item, pos);
      if (pos != item.size()) {
        throw std::invalid_argument("gate spec: trailing text in '" + std::string(item) + "'");
      }
      check(q, item);
      gates.push_back(make_ry(angle, q));
    } else if (kind == GateKind::CX) {
      uint32_t ctrl = spec_u32(item, pos);
      if (pos >= item.size() || item[pos] != ':') {
        throw std::invalid_argument("gate spec: cx needs 'control:target' in '" +
                                    std::string(item) + "'");
      }
      ++pos;
      uint32_t tgt = spec_u32(item, pos);
      if (pos != item.size()) {
        throw std::invalid_argument("gate spec: trailing text in '" + std::string(item) + "'");
      }
      check(ctrl, item);
      check(tgt, item);
      if (ctrl == tgt) {
        throw std::invalid_argument("gate spec: cx control equals target in '" +
                                    std::string(item) + "'");
      }
      gates.push_back(make_cx(ctrl, tgt));
    } else {
      uint32_t q0 = spec_u32(item, pos);
      uint32_t q1 = q0;
      if (pos + 1 < item.size() && item[pos] == '.' && item[pos + 1] == '.') {
        pos += 2;
        // Both "x0..3" and "x0..x3" are accepted.
        size_t name_start = pos;
        while (pos < item.size() && std::isalpha(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos > name_start && item.substr(name_start, pos - name_start) != name) {
          throw std::invalid_argument("gate spec: range gate mismatch in '" +
                                      std::string(item) + "'");
        }
        q1 = spec_u32(item, pos);
      }
      if (pos != item.size()) {
        throw std::invalid_argument("gate spec: trailing text in '" + std::string(item) + "'");
      }
      if (q1 < q0) {
        throw std::invalid_argument("gate spec: descending range in '" + std::string(item) + "'");
      }
      check(q1, item);
      for (uint32_t q = q0; q <= q1; ++q) {
        gates.push_back(Gate{kind, q, 0, 0.0});
      }
    }
  }
  return gates;
}

}  // namespace dynshadow
