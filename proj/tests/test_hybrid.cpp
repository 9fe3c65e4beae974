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

#include <map>
#include <vector>

#include "doctest.h"
#include "dynshadow/circuit_io.hpp"
#include "dynshadow/estimator.hpp"
#include "dynshadow/hybrid.hpp"
#include "dynshadow/statevector.hpp"
#include "dynshadow/stats.hpp"
#include "oracle.hpp"

using namespace dynshadow;

namespace {

std::vector<Snapshot> collect(const HybridShadowConfig& cfg) {
  auto stream = run_hybrid_shadow(cfg);
  std::vector<Snapshot> out;
  Snapshot s;
  while (stream->next(s)) out.push_back(s);
  return out;
}

std::string snapshot_key(const Snapshot& s) {
  std::string key = s.basis.to_word();
  key.push_back('|');
  for (int8_t m : s.mu) key.push_back(m > 0 ? '0' : '1');
  return key;
}

HybridShadowConfig base_config(uint32_t n, uint64_t shots, uint64_t seed) {
  HybridShadowConfig cfg;
  cfg.n_qubits = n;
  cfg.probs.assign(n, BasisProbabilities::uniform());
  cfg.shots = shots;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("fast and general paths are bit-identical for X-layer preps") {
  HybridShadowConfig cfg = base_config(5, 2000, 91);
  cfg.prep = parse_gate_spec("x0,x2,x4", 5);
  SUBCASE("noise free") {}
  SUBCASE("with readout flips") {
    cfg.readout_error = ReadoutErrorModel::uniform(5, 0.12);
  }
  auto fast = collect(cfg);
  cfg.disable_fast_path = true;
  auto general = collect(cfg);
  REQUIRE(fast.size() == general.size());
  for (size_t i = 0; i < fast.size(); ++i) {
    CAPTURE(i);
    CHECK(fast[i] == general[i]);
  }
}

TEST_CASE("hybrid path is distribution-equivalent to the full dynamic circuit") {
  // Same snapshot statistics from two very different routes: the full
  // RY/measure/feedback circuit on the dense simulator, and the classical
  // draw + tableau shortcut.
  auto circuit = build_random_pauli_circuit(
      2, parse_gate_spec("x0,h1", 2),
      std::vector<BasisProbabilities>(2, BasisProbabilities::uniform()));
  RunConfig run_cfg;
  run_cfg.shots = 30000;
  run_cfg.seed = 5;
  auto records = run_statevector(circuit, run_cfg);
  ShadowBitLayout layout = ShadowBitLayout::standard(2);
  ShotSnapshotAdapter adapter(*records, layout);

  std::map<std::string, uint64_t> a_counts;
  Snapshot s;
  while (adapter.next(s)) a_counts[snapshot_key(s)]++;

  HybridShadowConfig cfg = base_config(2, 30000, 6);
  cfg.prep = parse_gate_spec("x0,h1", 2);
  std::map<std::string, uint64_t> b_counts;
  for (const Snapshot& snap : collect(cfg)) b_counts[snapshot_key(snap)]++;

  std::vector<uint64_t> a, b;
  for (const auto& [key, n] : a_counts) {
    a.push_back(n);
    auto it = b_counts.find(key);
    b.push_back(it == b_counts.end() ? 0 : it->second);
  }
  for (const auto& [key, n] : b_counts) {
    if (a_counts.find(key) == a_counts.end()) {
      a.push_back(0);
      b.push_back(n);
    }
  }
  ChiSquareResult r = chi_square_two_sample(a, b);
  CHECK(r.p_value > 0.001);
}

TEST_CASE("single qubit joint distribution is exact") {
  HybridShadowConfig cfg = base_config(1, 60000, 12);
  auto snaps = collect(cfg);
  std::map<std::string, uint64_t> counts;
  for (const Snapshot& s : snaps) counts[snapshot_key(s)]++;

  // |0>: Z always lands mu=+1; X and Y are fair coins.
  std::map<std::string, double> probs{
      {"Z|0", 1.0 / 3.0}, {"X|0", 1.0 / 6.0}, {"X|1", 1.0 / 6.0},
      {"Y|0", 1.0 / 6.0}, {"Y|1", 1.0 / 6.0},
  };
  CHECK(oracle::gof_pvalue(counts, cfg.shots, probs) > 0.001);
}

TEST_CASE("biased basis draws follow the configured weights") {
  HybridShadowConfig cfg = base_config(1, 60000, 13);
  cfg.probs = {BasisProbabilities{0.6, 0.1, 0.3}};
  auto snaps = collect(cfg);
  std::map<std::string, uint64_t> axis_counts;
  for (const Snapshot& s : snaps) axis_counts[s.basis.to_word()]++;
  std::map<std::string, double> probs{{"X", 0.6}, {"Y", 0.1}, {"Z", 0.3}};
  CHECK(oracle::gof_pvalue(axis_counts, cfg.shots, probs) > 0.001);
}

TEST_CASE("general path handles entangling Clifford preps") {
  // Bell pair: in the ZZ basis outcomes are perfectly correlated, in XX
  // perfectly correlated, in ZX independent.
  HybridShadowConfig cfg = base_config(2, 50000, 21);
  cfg.prep = parse_gate_spec("h0,cx0:1", 2);
  uint64_t zz = 0, zz_eq = 0, xx = 0, xx_eq = 0;
  for (const Snapshot& s : collect(cfg)) {
    const std::string word = s.basis.to_word();
    if (word == "ZZ") {
      ++zz;
      if (s.mu[0] == s.mu[1]) ++zz_eq;
    } else if (word == "XX") {
      ++xx;
      if (s.mu[0] == s.mu[1]) ++xx_eq;
    }
  }
  REQUIRE(zz > 1000);
  REQUIRE(xx > 1000);
  CHECK(zz_eq == zz);
  CHECK(xx_eq == xx);
}

TEST_CASE("readout flips corrupt snapshots at the configured rate") {
  HybridShadowConfig cfg = base_config(1, 200000, 33);
  cfg.readout_error = ReadoutErrorModel::uniform(1, 0.25);
  // <Z> on |0> decays to 1-2e = 0.5 without mitigation.
  auto stream = run_hybrid_shadow(cfg);
  EstimatorConfig est;
  EstimateResult r = estimate_pauli(*stream, parse_pauli("Z", 1), est);
  CHECK(r.value == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("determinism and stream independence") {
  HybridShadowConfig cfg = base_config(3, 500, 77);
  cfg.prep = parse_gate_spec("x1", 3);
  auto a = collect(cfg);
  auto b = collect(cfg);
  CHECK(a == b);
  cfg.seed = 78;
  CHECK(a != collect(cfg));
}

TEST_CASE("configuration validation") {
  HybridShadowConfig cfg = base_config(2, 10, 1);
  cfg.prep = {make_ry(0.3, 0)};
  CHECK_THROWS_AS(run_hybrid_shadow(cfg), std::invalid_argument);

  HybridShadowConfig missing = base_config(2, 10, 1);
  missing.probs.pop_back();
  CHECK_THROWS_AS(run_hybrid_shadow(missing), std::invalid_argument);

  HybridShadowConfig zero = base_config(0, 10, 1);
  CHECK_THROWS_AS(run_hybrid_shadow(zero), std::invalid_argument);

  HybridShadowConfig bad_noise = base_config(1, 10, 1);
  bad_noise.readout_error = ReadoutErrorModel::uniform(2, 0.1);
  CHECK_THROWS_AS(run_hybrid_shadow(bad_noise), std::invalid_argument);
}

TEST_CASE("snapshot estimates recover dense expectations for product preps") {
  HybridShadowConfig cfg = base_config(2, 150000, 55);
  cfg.prep = parse_gate_spec("h0,x1", 2);
  EstimatorConfig est;
  std::vector<Snapshot> snaps = collect(cfg);
  for (const char* word : {"XI", "IZ", "XZ"}) {
    VectorSnapshotStream vs(snaps);
    PauliString p = parse_pauli(word, 2);
    EstimateResult r = estimate_pauli(vs, p, est);

    auto amp = oracle::zero_state(2);
    oracle::apply_gate(amp, make_h(0));
    oracle::apply_gate(amp, make_x(1));
    double exact = oracle::pauli_expectation(amp, p);
    CAPTURE(word);
    CHECK(std::abs(r.value - exact) < 5.0 * (r.std_err > 0 ? r.std_err : 1e-3));
  }
}
