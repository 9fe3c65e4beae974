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

// End-to-end acceptance gate. Each check prints one [PASS]/[FAIL] line with
// its measured numbers; the process exits 3 if any check fails. Pass
// --extended to stretch the scale check to ten million shots.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "dynshadow/bench.hpp"
#include "dynshadow/circuit.hpp"
#include "dynshadow/circuit_io.hpp"
#include "dynshadow/estimator.hpp"
#include "dynshadow/hybrid.hpp"
#include "dynshadow/pauli.hpp"
#include "dynshadow/rng.hpp"
#include "dynshadow/statevector.hpp"
#include "dynshadow/stats.hpp"
#include "dynshadow/tableau.hpp"
#include "dynshadow/verify.hpp"

namespace {

using namespace dynshadow;
using Clock = std::chrono::steady_clock;

struct CheckResult {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Deterministic pseudo-random Hamiltonian: `n_terms` weight-limited words
// with coefficients in [-1, 1].
Hamiltonian random_hamiltonian(uint32_t n_qubits, uint32_t n_terms, uint64_t seed) {
  Rng rng(seed);
  std::vector<HamiltonianTerm> terms;
  while (terms.size() < n_terms) {
    std::vector<PauliString::Letter> letters;
    for (uint32_t q = 0; q < n_qubits; ++q) {
      if (!rng.next_bool(0.4)) continue;
      auto axis = static_cast<PauliAxis>(1 + rng.next_u64() % 3);
      letters.push_back({q, axis});
    }
    if (letters.empty()) continue;
    double coeff = 2.0 * rng.next_unit() - 1.0;
    if (std::abs(coeff) < 0.05) continue;
    terms.push_back({coeff, PauliString(n_qubits, std::move(letters))});
  }
  return Hamiltonian(n_qubits, std::move(terms));
}

// ---------------------------------------------------------------------------

CheckResult check_single_qubit_grid() {
  auto start = Clock::now();
  VerificationGrid g = run_single_qubit_verification(100000, 20260101, 0.02);
  double elapsed = seconds_since(start);
  bool pass = g.conclusive && g.passed && elapsed < 60.0;
  return {pass, fmt("max |diag-1|=%.4f, max |offdiag|=%.4f, tol 0.02, %.1fs",
                    g.max_diagonal_deviation, g.max_off_diagonal, elapsed)};
}

CheckResult check_sampler_joint_distribution() {
  auto c = build_random_pauli_circuit(
      1, {}, std::vector<BasisProbabilities>(1, BasisProbabilities::uniform()));
  auto dist = enumerate_exact(c);
  std::map<std::string, double> joint;
  for (const auto& [key, p] : dist) joint[key.substr(0, 2)] += p;
  const std::map<std::string, double> expected{
      {"00", 1.0 / 3.0}, {"01", 1.0 / 3.0}, {"10", 1.0 / 6.0}, {"11", 1.0 / 6.0}};
  double worst = 0.0;
  for (const auto& [key, p] : expected) {
    worst = std::max(worst, std::abs(joint[key] - p));
  }
  return {worst <= 1e-12 && joint.size() == 4,
          fmt("max |p - target| = %.2e over the four (Store_Z, Store_XY) cells", worst)};
}

CheckResult check_estimator_unbiasedness() {
  const std::vector<BasisProbabilities> weight_settings{
      BasisProbabilities::uniform(), BasisProbabilities{0.5, 0.25, 0.25},
      BasisProbabilities{0.2, 0.3, 0.5}};
  double worst = 0.0;
  uint64_t cases = 0;
  for (uint32_t n = 1; n <= 3; ++n) {
    std::vector<std::vector<Gate>> preps{{}};
    preps.push_back(parse_gate_spec(n == 1 ? "x0" : "x0,h1", n));
    if (n == 3) preps.push_back(parse_gate_spec("h0,x1,sdg2", n));
    for (const auto& prep : preps) {
      StateVector ref(n);
      for (const Gate& g : prep) ref.apply(g);
      for (const auto& probs : weight_settings) {
        auto c = build_random_pauli_circuit(
            n, prep, std::vector<BasisProbabilities>(n, probs));
        auto dist = enumerate_exact(c);
        ShadowBitLayout layout = ShadowBitLayout::standard(n);
        EstimatorConfig cfg;
        cfg.weights.assign(n, probs);
        uint64_t n_words = uint64_t{1} << (2 * n);
        for (uint64_t w = 0; w < n_words; ++w) {
          std::vector<PauliString::Letter> letters;
          for (uint32_t q = 0; q < n; ++q) {
            auto axis = static_cast<PauliAxis>((w >> (2 * q)) & 3);
            if (axis != PauliAxis::I) letters.push_back({q, axis});
          }
          PauliString obs(n, std::move(letters));
          double acc = 0.0;
          for (const auto& [key, p] : dist) {
            ShotRecord rec{parse_bits(key)};
            acc += p * single_snapshot_value(snapshot_from_shot_record(rec, layout),
                                             obs, cfg);
          }
          worst = std::max(worst, std::abs(acc - ref.pauli_expectation(obs)));
          ++cases;
        }
      }
    }
  }
  return {worst <= 1e-12,
          fmt("max |weighted ssv sum - exact| = %.2e over %llu (prep, weights, "
              "observable) cases",
              worst, static_cast<unsigned long long>(cases))};
}

CheckResult check_backend_cross_validation() {
  const uint32_t n = 4;
  const uint64_t shots = 1000000;
  Hamiltonian h = random_hamiltonian(n, 16, 12);
  std::vector<Gate> prep = parse_gate_spec("x0,x1", n);
  double exact = exact_energy_on_basis_state(h, {1, 1, 0, 0});

  auto circuit = build_random_pauli_circuit(
      n, prep, std::vector<BasisProbabilities>(n, BasisProbabilities::uniform()));
  RunConfig run_cfg;
  run_cfg.shots = shots;
  run_cfg.seed = 900001;
  auto records = run_statevector(circuit, run_cfg);
  ShotSnapshotAdapter dense_snaps(*records, ShadowBitLayout::standard(n));
  EstimatorConfig est;
  EstimateResult a = estimate_energy(dense_snaps, h, est);

  HybridShadowConfig hybrid;
  hybrid.n_qubits = n;
  hybrid.prep = prep;
  hybrid.probs.assign(n, BasisProbabilities::uniform());
  hybrid.shots = shots;
  hybrid.seed = 900002;
  hybrid.disable_fast_path = true;
  auto snaps = run_hybrid_shadow(hybrid);
  EstimateResult b = estimate_energy(*snaps, h, est);

  double combined = std::sqrt(a.std_err * a.std_err + b.std_err * b.std_err);
  bool pass = std::abs(a.value - b.value) <= 3.0 * combined &&
              std::abs(a.value - exact) <= 3.0 * a.std_err &&
              std::abs(b.value - exact) <= 3.0 * b.std_err;
  return {pass,
          fmt("exact %.4f, dense %.4f+-%.4f, tableau %.4f+-%.4f, gap %.4f <= %.4f",
              exact, a.value, a.std_err, b.value, b.std_err,
              std::abs(a.value - b.value), 3.0 * combined)};
}

CheckResult check_readout_mitigation() {
  const double e = 0.02;
  auto c = build_random_pauli_circuit(
      1, {}, std::vector<BasisProbabilities>(1, BasisProbabilities::uniform()));
  // Flips hit the system qubit's records; the sampler scratch is modeled
  // clean so the drawn basis stays faithful.
  ReadoutErrorModel circuit_noise;
  circuit_noise.flip_probability = {e, 0.0};
  ReadoutErrorModel data_noise;
  data_noise.flip_probability = {e};

  PauliString z = parse_pauli("Z", 1);
  ShadowBitLayout layout = ShadowBitLayout::standard(1);
  EstimatorConfig plain;
  EstimatorConfig mitigated;
  mitigated.mitigation = data_noise;

  auto dist = enumerate_exact(c, circuit_noise);
  double plain_exact = 0.0, mitigated_exact = 0.0;
  for (const auto& [key, p] : dist) {
    Snapshot s = snapshot_from_shot_record(ShotRecord{parse_bits(key)}, layout);
    plain_exact += p * single_snapshot_value(s, z, plain);
    mitigated_exact += p * single_snapshot_value(s, z, mitigated);
  }

  RunConfig run_cfg;
  run_cfg.shots = 100000;
  run_cfg.seed = 55001;
  run_cfg.readout_error = circuit_noise;
  auto rec1 = run_statevector(c, run_cfg);
  ShotSnapshotAdapter s1(*rec1, layout);
  EstimateResult sampled_plain = estimate_pauli(s1, z, plain);
  auto rec2 = run_statevector(c, run_cfg);
  ShotSnapshotAdapter s2(*rec2, layout);
  EstimateResult sampled_mitigated = estimate_pauli(s2, z, mitigated);

  bool pass = std::abs(plain_exact - 0.96) <= 1e-12 &&
              std::abs(mitigated_exact - 1.0) <= 1e-12 &&
              std::abs(sampled_plain.value - 0.96) <= 0.01 &&
              std::abs(sampled_mitigated.value - 1.0) <= 0.01;
  return {pass,
          fmt("exact %.15f -> %.15f, sampled %.4f -> %.4f at 1e5 shots",
              plain_exact, mitigated_exact, sampled_plain.value,
              sampled_mitigated.value)};
}

CheckResult check_convergence_slope() {
  const uint32_t n = 8;
  Hamiltonian h = random_hamiltonian(n, 20, 777);
  std::vector<Gate> prep = parse_gate_spec("x0,x2,x4,x6", n);
  double exact = exact_energy_on_basis_state(h, {1, 0, 1, 0, 1, 0, 1, 0});

  HybridShadowConfig cfg;
  cfg.n_qubits = n;
  cfg.prep = prep;
  cfg.probs.assign(n, BasisProbabilities::uniform());
  cfg.shots = 1000000;
  cfg.seed = 606060;
  auto snaps = run_hybrid_shadow(cfg);

  EstimatorConfig est;
  std::vector<uint64_t> checkpoints{1000,   3162,   10000,  31623,
                                    100000, 316228, 1000000};
  ConvergenceTrace trace = convergence_trace(*snaps, h, est, checkpoints, exact);

  std::vector<double> log_n, log_err;
  for (const TraceRow& row : trace.rows) {
    if (!row.abs_error || *row.abs_error <= 0.0) continue;
    log_n.push_back(std::log10(static_cast<double>(row.shots)));
    log_err.push_back(std::log10(*row.abs_error));
  }
  if (log_n.size() < 4) {
    return {false, "too few usable checkpoints for a log-log fit"};
  }
  LinearFit fit = fit_line(log_n, log_err);
  bool pass = !trace.truncated && fit.slope >= -0.65 && fit.slope <= -0.35;
  return {pass, fmt("log-log error slope %.3f over 1e3..1e6 shots (want -0.5 +- 0.15)",
                    fit.slope)};
}

CheckResult check_forty_qubit_scale(bool extended) {
  const uint32_t n = 40;
  const uint64_t shots = extended ? 10000000 : 1000000;
  Hamiltonian h = parse_hamiltonian_text(
      "1.0  ZIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIII\n"
      "-0.5 IIIIIIIIIIIIIIIIIIIIZIIIIIIIIIIIIIIIIIII\n"
      "0.25 ZIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIZ\n"
      "0.7  IIIIIZZIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIII\n"
      "-0.3 IIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIZZ\n"
      "0.4  XXIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIII\n");
  std::vector<Gate> prep = parse_gate_spec("x0..x19", n);
  std::vector<uint8_t> bits(n, 0);
  for (uint32_t q = 0; q < 20; ++q) bits[q] = 1;
  double exact = exact_energy_on_basis_state(h, bits);

  auto start = Clock::now();
  HybridShadowConfig cfg;
  cfg.n_qubits = n;
  cfg.prep = prep;
  cfg.probs.assign(n, BasisProbabilities::uniform());
  cfg.shots = shots;
  cfg.seed = 414141;
  auto snaps = run_hybrid_shadow(cfg);
  EstimatorConfig est;
  EstimateResult r = estimate_energy(*snaps, h, est);
  double elapsed = seconds_since(start);

  bool pass = r.shots == shots && r.std_err > 0.0 &&
              std::abs(r.value - exact) <= 5.0 * r.std_err;
  return {pass, fmt("%llu shots on 40 qubits in %.1fs, energy %.4f+-%.4f vs exact %.4f",
                    static_cast<unsigned long long>(r.shots), elapsed, r.value,
                    r.std_err, exact)};
}

CheckResult check_bench_structure() {
  BenchConfig cfg;
  cfg.n_qubits = 1;
  cfg.seed = 31337;
  bool structure = true;
  for (uint64_t shots : {uint64_t{1}, uint64_t{1000}}) {
    cfg.shots = shots;
    BenchReport dyn = run_dynamic_bench(cfg);
    structure = structure && dyn.circuits_compiled == 1 && dyn.total_shots == shots;
  }
  cfg.shots = 1000;
  BenchReport stat = run_static_bench(cfg);
  structure = structure && stat.circuits_compiled == 1000;

  double ratio = modeled_throughput_ratio(kCloudCalibratedCost);
  double reference = (100000.0 / 40.0) / (100.0 / 540.0);
  bool ratio_ok = std::abs(ratio - reference) / reference <= 1e-3;
  return {structure && ratio_ok,
          fmt("dynamic compiles 1, static compiles N; modeled ratio %.2f vs %.2f "
              "reference",
              ratio, reference)};
}

}  // namespace

int main(int argc, char** argv) {
  bool extended = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--extended") == 0) extended = true;
  }

  std::vector<std::pair<const char*, CheckResult>> results;
  results.push_back({"single-qubit-grid", check_single_qubit_grid()});
  results.push_back({"sampler-joint-distribution", check_sampler_joint_distribution()});
  results.push_back({"snapshot-estimator-unbiasedness", check_estimator_unbiasedness()});
  results.push_back({"backend-cross-validation", check_backend_cross_validation()});
  results.push_back({"readout-mitigation", check_readout_mitigation()});
  results.push_back({"convergence-slope", check_convergence_slope()});
  results.push_back({"forty-qubit-scale", check_forty_qubit_scale(extended)});
  results.push_back({"bench-structure", check_bench_structure()});

  int failures = 0;
  for (const auto& [name, result] : results) {
    std::printf("[%s] %s: %s\n", result.pass ? "PASS" : "FAIL", name,
                result.detail.c_str());
    if (!result.pass) ++failures;
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures == 0 ? 0 : 3;
}
