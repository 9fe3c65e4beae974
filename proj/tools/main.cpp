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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dynshadow/bench.hpp"
#include "dynshadow/circuit.hpp"
#include "dynshadow/circuit_io.hpp"
#include "dynshadow/estimator.hpp"
#include "dynshadow/fsio.hpp"
#include "dynshadow/hybrid.hpp"
#include "dynshadow/pauli.hpp"
#include "dynshadow/records.hpp"
#include "dynshadow/statevector.hpp"
#include "dynshadow/tableau.hpp"
#include "dynshadow/verify.hpp"

namespace {

using namespace dynshadow;

// Exit codes: 0 success, 1 usage error, 2 validation or input failure,
// 3 verification failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCheckFailed = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void kv(const std::string& key, const std::string& value) {
  std::cout << key << '=' << value << '\n';
}

void kv(const std::string& key, uint64_t value) { kv(key, std::to_string(value)); }
void kv(const std::string& key, double value) { kv(key, fmt(value)); }

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    start = comma == std::string::npos ? text.size() + 1 : comma + 1;
    if (item.empty()) {
      throw std::invalid_argument(std::string(what) + ": empty entry in '" + text + "'");
    }
    size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw std::invalid_argument(std::string(what) + ": bad number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

BasisProbabilities parse_probs(const std::string& text) {
  auto v = parse_double_list(text, "--probs");
  if (v.size() != 3) {
    throw std::invalid_argument("--probs expects 'pX,pY,pZ'");
  }
  BasisProbabilities p{v[0], v[1], v[2]};
  p.validate();
  return p;
}

// One value broadcasts to every qubit; otherwise exactly one per qubit.
ReadoutErrorModel parse_error_rates(const std::string& text, uint32_t n_qubits) {
  auto v = parse_double_list(text, "--readout-errors");
  ReadoutErrorModel m;
  if (v.size() == 1) {
    m.flip_probability.assign(n_qubits, v[0]);
  } else if (v.size() == n_qubits) {
    m.flip_probability = v;
  } else {
    throw std::invalid_argument("--readout-errors expects 1 or n_qubits entries");
  }
  m.validate();
  return m;
}

std::vector<uint64_t> parse_checkpoints(const std::string& text) {
  auto v = parse_double_list(text, "--trace");
  std::vector<uint64_t> out;
  for (double d : v) {
    if (!(d >= 1.0) || d != static_cast<double>(static_cast<uint64_t>(d))) {
      throw std::invalid_argument("--trace checkpoints must be positive integers");
    }
    out.push_back(static_cast<uint64_t>(d));
  }
  return out;
}

uint64_t resolve_seed(const CLI::Option* seed_opt, uint64_t seed_value, bool ci) {
  if (seed_opt->count() > 0) return seed_value;
  if (ci) {
    throw UsageError("--seed is mandatory for sampling commands in --ci mode");
  }
  std::random_device rd;
  return (static_cast<uint64_t>(rd()) << 32) ^ rd();
}

std::vector<BasisProbabilities> broadcast_probs(const std::string& probs_text,
                                                uint32_t n_qubits) {
  BasisProbabilities p =
      probs_text.empty() ? BasisProbabilities::uniform() : parse_probs(probs_text);
  return std::vector<BasisProbabilities>(n_qubits, p);
}

int report_diagnostics(const std::vector<std::string>& problems) {
  for (const auto& msg : problems) {
    std::cerr << "invalid circuit: " << msg << '\n';
  }
  return kExitValidation;
}

void print_bench_report(const BenchReport& r) {
  kv(r.mode + ".circuits_compiled", r.circuits_compiled);
  kv(r.mode + ".total_shots", r.total_shots);
  kv(r.mode + ".measured_wall_seconds", r.wall_seconds);
  kv(r.mode + ".modeled_seconds", r.modeled_seconds);
  kv(r.mode + ".speedup_vs_static", r.speedup_vs_static);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic-circuit classical shadows toolkit"};
  app.require_subcommand(1);
  bool ci = false;
  app.add_flag("--ci", ci, "CI mode: refuse to sample without an explicit --seed");

  // ---- build ----
  auto* build = app.add_subcommand("build", "Write a randomized-measurement dynamic circuit");
  uint32_t build_qubits = 0;
  std::string build_prep, build_probs, build_out;
  build->add_option("--qubits", build_qubits, "System qubit count")->required();
  build->add_option("--prep", build_prep, "State preparation gate list, e.g. x0,h1,cx0:1");
  build->add_option("--probs", build_probs, "Basis probabilities pX,pY,pZ (default uniform)");
  build->add_option("--out", build_out, "Circuit file to write")->required();

  // ---- run ----
  auto* run = app.add_subcommand("run", "Execute a circuit (or the hybrid sampler)");
  std::string run_circuit, run_prep, run_probs, run_backend, run_out, run_errors;
  bool run_hybrid = false;
  uint32_t run_qubits = 0;
  uint64_t run_shots = 0, run_seed = 0;
  double run_error = 0.0;
  run->add_option("--circuit", run_circuit, "Circuit file to execute");
  run->add_flag("--hybrid", run_hybrid,
                "Classical basis draw + tableau measurement (needs --qubits)");
  run->add_option("--qubits", run_qubits, "Qubit count (hybrid mode)");
  run->add_option("--prep", run_prep, "Preparation gate list (hybrid mode)");
  run->add_option("--probs", run_probs, "Basis probabilities pX,pY,pZ (hybrid mode)");
  run->add_option("--shots", run_shots, "Shot count")->required();
  auto* run_seed_opt = run->add_option("--seed", run_seed, "RNG seed");
  auto* run_error_opt =
      run->add_option("--readout-error", run_error, "Uniform readout flip probability");
  run->add_option("--readout-errors", run_errors, "Per-qubit flip probabilities (csv)");
  run->add_option("--backend", run_backend, "statevector | stabilizer");
  run->add_option("--out", run_out, "Output CSV path")->required();

  // ---- estimate ----
  auto* est = app.add_subcommand("estimate", "Estimate observables from a snapshot CSV");
  std::string est_snapshots, est_hamiltonian, est_pauli, est_errors, est_aggregator = "mean";
  std::string est_probs, est_trace, est_trace_out;
  bool est_mitigate = false;
  double est_reference = 0.0;
  est->add_option("--snapshots", est_snapshots,
                  "Snapshot CSV (or labeled record CSV) path")
      ->required();
  est->add_option("--hamiltonian", est_hamiltonian, "Hamiltonian file (coeff word lines)");
  est->add_option("--pauli", est_pauli, "Single Pauli word to estimate instead");
  est->add_flag("--mitigate", est_mitigate, "Invert readout flips via 1/(1-2e)");
  est->add_option("--readout-errors", est_errors,
                  "Per-qubit flip probabilities for mitigation (csv, 1 value broadcasts)");
  est->add_option("--aggregator", est_aggregator, "mean | mom:<groups>");
  est->add_option("--probs", est_probs,
                  "Sampling weights pX,pY,pZ the snapshots were drawn with");
  est->add_option("--trace", est_trace, "Checkpoint shot counts (csv, ascending)");
  est->add_option("--trace-out", est_trace_out, "Trace CSV path (required with --trace)");
  auto* est_ref_opt =
      est->add_option("--reference", est_reference, "Exact value for the abs_error column");

  // ---- verify-single-qubit ----
  auto* verify = app.add_subcommand(
      "verify-single-qubit", "Estimate the 3x3 prep/observable grid and check it");
  uint64_t verify_shots = 100000, verify_seed = 0;
  double verify_tolerance = 0.02, verify_error = 0.0;
  std::string verify_backend = "statevector";
  bool verify_mitigate = false;
  verify->add_option("--shots", verify_shots, "Shot count per prep (default 100000)");
  auto* verify_seed_opt = verify->add_option("--seed", verify_seed, "RNG seed");
  verify->add_option("--tolerance", verify_tolerance, "Per-cell tolerance (default 0.02)");
  verify->add_option("--backend", verify_backend, "statevector | stabilizer");
  auto* verify_error_opt = verify->add_option("--readout-error", verify_error,
                                              "Data-qubit readout flip probability");
  verify->add_flag("--mitigate", verify_mitigate, "Mitigate the readout error");

  // ---- bench ----
  auto* bench = app.add_subcommand(
      "bench", "Compare compile-once dynamic against compile-per-shot static sampling");
  uint32_t bench_qubits = 1;
  std::string bench_prep, bench_mode = "both";
  uint64_t bench_shots = 0, bench_seed = 0;
  double bench_compile = kCloudCalibratedCost.compile_seconds;
  double bench_per_shot = kCloudCalibratedCost.per_shot_seconds;
  bench->add_option("--qubits", bench_qubits, "System qubit count (default 1)");
  bench->add_option("--prep", bench_prep, "State preparation gate list");
  bench->add_option("--shots", bench_shots, "Shot count")->required();
  auto* bench_seed_opt = bench->add_option("--seed", bench_seed, "RNG seed");
  bench->add_option("--compile-cost", bench_compile,
                    "Modeled seconds per compiled circuit (default 5.4)");
  bench->add_option("--per-shot-cost", bench_per_shot,
                    "Modeled seconds per shot (default 4e-4)");
  bench->add_option("--mode", bench_mode, "dynamic | static | both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build->parsed()) {
      auto probs = broadcast_probs(build_probs, build_qubits);
      auto prep = parse_gate_spec(build_prep, build_qubits);
      DynamicCircuit c = build_random_pauli_circuit(build_qubits, prep, probs);
      auto problems = validate_circuit(c);
      if (!problems.empty()) return report_diagnostics(problems);
      write_circuit_file(c, build_out);
      kv("qubits", static_cast<uint64_t>(c.n_qubits));
      kv("clbits", static_cast<uint64_t>(c.n_clbits));
      kv("instructions", static_cast<uint64_t>(c.instructions.size()));
      kv("out", build_out);
      return kExitOk;
    }

    if (run->parsed()) {
      uint64_t seed = resolve_seed(run_seed_opt, run_seed, ci);
      if (run_shots == 0) throw std::invalid_argument("--shots must be positive");
      if (run_error_opt->count() > 0 && !run_errors.empty()) {
        throw UsageError("use either --readout-error or --readout-errors, not both");
      }
      if (run_hybrid) {
        if (!run_circuit.empty()) {
          throw UsageError("--hybrid and --circuit are mutually exclusive");
        }
        if (run_qubits == 0) throw UsageError("--hybrid needs --qubits");
        if (!run_backend.empty() && run_backend != "stabilizer") {
          throw UsageError("--hybrid runs on the stabilizer backend only");
        }
        HybridShadowConfig cfg;
        cfg.n_qubits = run_qubits;
        cfg.prep = parse_gate_spec(run_prep, run_qubits);
        cfg.probs = broadcast_probs(run_probs, run_qubits);
        cfg.shots = run_shots;
        cfg.seed = seed;
        if (run_error_opt->count() > 0) {
          cfg.readout_error = ReadoutErrorModel::uniform(run_qubits, run_error);
        } else if (!run_errors.empty()) {
          cfg.readout_error = parse_error_rates(run_errors, run_qubits);
        }
        auto snaps = run_hybrid_shadow(cfg);
        AtomicFileWriter writer(run_out);
        write_snapshots_csv(writer.stream(), *snaps);
        writer.commit();
        kv("backend", std::string("stabilizer"));
        kv("emitted", std::string("snapshots"));
      } else {
        if (run_circuit.empty()) {
          throw UsageError("run needs --circuit <path> or --hybrid");
        }
        DynamicCircuit c = read_circuit_file(run_circuit);
        auto problems = validate_circuit(c);
        if (!problems.empty()) return report_diagnostics(problems);
        RunConfig cfg;
        cfg.shots = run_shots;
        cfg.seed = seed;
        if (run_error_opt->count() > 0) {
          cfg.readout_error = ReadoutErrorModel::uniform(c.n_qubits, run_error);
        } else if (!run_errors.empty()) {
          cfg.readout_error = parse_error_rates(run_errors, c.n_qubits);
        }
        std::string backend = run_backend.empty() ? "statevector" : run_backend;
        std::unique_ptr<ShotRecordStream> records;
        if (backend == "statevector") {
          records = run_statevector(c, cfg);
        } else if (backend == "stabilizer") {
          records = run_tableau(c, cfg);
        } else {
          throw UsageError("--backend must be statevector or stabilizer");
        }
        std::vector<std::string> labels = c.clbit_labels;
        bool any_label = false;
        for (const auto& l : labels) {
          if (!l.empty()) any_label = true;
        }
        if (!any_label) {
          labels.resize(c.n_clbits);
          for (uint32_t i = 0; i < c.n_clbits; ++i) labels[i] = "c" + std::to_string(i);
        }
        AtomicFileWriter writer(run_out);
        write_shot_records_csv(writer.stream(), *records, labels);
        writer.commit();
        kv("backend", backend);
        kv("emitted", std::string("records"));
      }
      kv("shots", run_shots);
      kv("seed", seed);
      kv("out", run_out);
      return kExitOk;
    }

    if (est->parsed()) {
      if (est_hamiltonian.empty() == est_pauli.empty()) {
        throw UsageError("estimate needs exactly one of --hamiltonian or --pauli");
      }
      if (!est_trace.empty() && est_trace_out.empty()) {
        throw UsageError("--trace needs --trace-out");
      }
      Hamiltonian h = [&]() {
        if (!est_hamiltonian.empty()) return parse_hamiltonian_file(est_hamiltonian);
        PauliString p = parse_pauli(est_pauli, static_cast<uint32_t>(est_pauli.size()));
        return Hamiltonian(p.n_qubits(), {{1.0, p}});
      }();

      EstimatorConfig cfg;
      if (!est_probs.empty()) {
        cfg.weights = broadcast_probs(est_probs, h.n_qubits());
      }
      if (est_mitigate) {
        if (est_errors.empty()) {
          throw std::invalid_argument("--mitigate needs --readout-errors");
        }
        cfg.mitigation = parse_error_rates(est_errors, h.n_qubits());
      } else if (!est_errors.empty()) {
        throw UsageError("--readout-errors without --mitigate has no effect here");
      }
      if (est_aggregator == "mean") {
        cfg.aggregator = AggregatorKind::Mean;
      } else if (est_aggregator.rfind("mom:", 0) == 0) {
        cfg.aggregator = AggregatorKind::MedianOfMeans;
        cfg.median_groups = static_cast<uint32_t>(std::stoul(est_aggregator.substr(4)));
      } else {
        throw UsageError("--aggregator must be mean or mom:<groups>");
      }

      std::ifstream in(est_snapshots);
      if (!in) throw std::invalid_argument("cannot open snapshots file: " + est_snapshots);
      // Snapshot CSVs are consumed directly; record CSVs from a circuit run
      // are decoded through their Store_Z/Store_XY/Result labels.
      std::string header;
      std::getline(in, header);
      if (!header.empty() && header.back() == '\r') header.pop_back();
      in.seekg(0);
      std::optional<SnapshotCsvReader> snap_reader;
      std::optional<ShotRecordCsvReader> record_reader;
      std::optional<ShotSnapshotAdapter> adapted;
      SnapshotStream* reader_ptr = nullptr;
      if (header == "shot,basis,outcomes") {
        snap_reader.emplace(in);
        reader_ptr = &*snap_reader;
      } else {
        record_reader.emplace(in);
        adapted.emplace(*record_reader, ShadowBitLayout::from_labels(record_reader->labels()));
        reader_ptr = &*adapted;
      }
      SnapshotStream& reader = *reader_ptr;

      kv("terms", static_cast<uint64_t>(h.terms().size()));
      kv("n_qubits", static_cast<uint64_t>(h.n_qubits()));
      kv("aggregator", est_aggregator);
      kv("mitigated", std::string(est_mitigate ? "true" : "false"));
      if (!est_trace.empty()) {
        auto checkpoints = parse_checkpoints(est_trace);
        std::optional<double> ref;
        if (est_ref_opt->count() > 0) ref = est_reference;
        ConvergenceTrace trace = convergence_trace(reader, h, cfg, checkpoints, ref);
        AtomicFileWriter writer(est_trace_out);
        write_trace_csv(writer.stream(), trace);
        writer.commit();
        kv("trace_out", est_trace_out);
        kv("trace_rows", static_cast<uint64_t>(trace.rows.size()));
        kv("truncated", std::string(trace.truncated ? "true" : "false"));
        if (!trace.rows.empty()) {
          const TraceRow& last = trace.rows.back();
          kv("value", last.estimate);
          kv("stderr", last.std_err);
          kv("shots", last.shots);
        }
      } else {
        EstimateResult r = estimate_energy(reader, h, cfg);
        kv("value", r.value);
        kv("stderr", r.std_err);
        kv("shots", r.shots);
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      uint64_t seed = resolve_seed(verify_seed_opt, verify_seed, ci);
      VerifyBackend backend;
      if (verify_backend == "statevector") {
        backend = VerifyBackend::Statevector;
      } else if (verify_backend == "stabilizer") {
        backend = VerifyBackend::HybridStabilizer;
      } else {
        throw UsageError("--backend must be statevector or stabilizer");
      }
      std::optional<double> err;
      if (verify_error_opt->count() > 0) err = verify_error;
      VerificationGrid grid = run_single_qubit_verification(
          verify_shots, seed, verify_tolerance, err, verify_mitigate, backend);
      kv("shots", grid.shots);
      kv("seed", seed);
      kv("tolerance", grid.tolerance);
      kv("backend", verify_backend);
      for (size_t row = 0; row < 3; ++row) {
        for (size_t col = 0; col < 3; ++col) {
          std::string key = std::string("exp[") + VerificationGrid::prep_name(row) + "][" +
                            VerificationGrid::observable_name(col) + "]";
          kv(key, grid.values[row][col]);
        }
      }
      kv("max_diagonal_deviation", grid.max_diagonal_deviation);
      kv("max_off_diagonal", grid.max_off_diagonal);
      kv("conclusive", std::string(grid.conclusive ? "true" : "false"));
      if (!grid.conclusive) {
        kv("status", std::string("inconclusive"));
        kv("shot_floor", verification_shot_floor(grid.tolerance));
        return kExitOk;
      }
      kv("status", std::string(grid.passed ? "pass" : "fail"));
      return grid.passed ? kExitOk : kExitCheckFailed;
    }

    if (bench->parsed()) {
      uint64_t seed = resolve_seed(bench_seed_opt, bench_seed, ci);
      if (bench_shots == 0) throw std::invalid_argument("--shots must be positive");
      BenchConfig cfg;
      cfg.n_qubits = bench_qubits;
      cfg.prep = parse_gate_spec(bench_prep, bench_qubits);
      cfg.shots = bench_shots;
      cfg.seed = seed;
      cfg.cost = CompileCostModel{bench_compile, bench_per_shot};
      kv("seed", seed);
      if (bench_mode == "both") {
        BenchComparison cmp = run_bench_comparison(cfg);
        print_bench_report(cmp.dynamic_mode);
        print_bench_report(cmp.static_mode);
        kv("modeled_speedup", cmp.modeled_speedup);
        kv("throughput_ratio", cmp.throughput_ratio);
      } else if (bench_mode == "dynamic") {
        print_bench_report(run_dynamic_bench(cfg));
        kv("throughput_ratio", modeled_throughput_ratio(cfg.cost));
      } else if (bench_mode == "static") {
        print_bench_report(run_static_bench(cfg));
        kv("throughput_ratio", modeled_throughput_ratio(cfg.cost));
      } else {
        throw UsageError("--mode must be dynamic, static, or both");
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
