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

#include "dynshadow/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "dynshadow/stats.hpp"

namespace dynshadow {

ShadowBitLayout ShadowBitLayout::standard(uint32_t n_qubits) {
  ShadowBitLayout l;
  l.store_z.resize(n_qubits);
  l.store_xy.resize(n_qubits);
  l.result.resize(n_qubits);
  for (uint32_t i = 0; i < n_qubits; ++i) {
    l.store_z[i] = i;
    l.store_xy[i] = n_qubits + i;
    l.result[i] = 2 * n_qubits + i;
  }
  return l;
}

namespace {

// Matches "<stem>[<index>]"; returns false when the label has another shape.
bool parse_indexed(const std::string& label, const char* stem, uint32_t* index) {
  size_t stem_len = std::char_traits<char>::length(stem);
  if (label.size() < stem_len + 3) return false;
  if (label.compare(0, stem_len, stem) != 0) return false;
  if (label[stem_len] != '[' || label.back() != ']') return false;
  uint32_t v = 0;
  for (size_t i = stem_len + 1; i + 1 < label.size(); ++i) {
    char c = label[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<uint32_t>(c - '0');
  }
  *index = v;
  return true;
}

void place(std::vector<int64_t>& slots, uint32_t index, size_t clbit, const char* what) {
  if (slots.size() <= index) slots.resize(index + 1, -1);
  if (slots[index] != -1) {
    throw std::invalid_argument(std::string("duplicate label ") + what + "[" +
                                std::to_string(index) + "]");
  }
  slots[index] = static_cast<int64_t>(clbit);
}

}  // namespace

ShadowBitLayout ShadowBitLayout::from_labels(const std::vector<std::string>& labels) {
  std::vector<int64_t> sz, sxy, res;
  for (size_t i = 0; i < labels.size(); ++i) {
    uint32_t idx = 0;
    if (parse_indexed(labels[i], "Store_Z", &idx)) {
      place(sz, idx, i, "Store_Z");
    } else if (parse_indexed(labels[i], "Store_XY", &idx)) {
      place(sxy, idx, i, "Store_XY");
    } else if (parse_indexed(labels[i], "Result", &idx)) {
      place(res, idx, i, "Result");
    }
  }
  size_t n = res.size();
  if (n == 0 || sz.size() != n || sxy.size() != n) {
    throw std::invalid_argument(
        "labels do not form complete Store_Z/Store_XY/Result triples");
  }
  ShadowBitLayout l;
  l.store_z.resize(n);
  l.store_xy.resize(n);
  l.result.resize(n);
  for (size_t i = 0; i < n; ++i) {
    if (sz[i] < 0 || sxy[i] < 0 || res[i] < 0) {
      throw std::invalid_argument("missing shadow label for qubit " + std::to_string(i));
    }
    l.store_z[i] = static_cast<uint32_t>(sz[i]);
    l.store_xy[i] = static_cast<uint32_t>(sxy[i]);
    l.result[i] = static_cast<uint32_t>(res[i]);
  }
  return l;
}

Snapshot snapshot_from_shot_record(const ShotRecord& record, const ShadowBitLayout& layout) {
  uint32_t n = layout.n_qubits();
  std::vector<PauliAxis> axes(n);
  std::vector<int8_t> mu(n);
  for (uint32_t i = 0; i < n; ++i) {
    uint8_t sz = record.values.at(layout.store_z[i]);
    uint8_t sxy = record.values.at(layout.store_xy[i]);
    axes[i] = sz ? PauliAxis::Z : (sxy ? PauliAxis::Y : PauliAxis::X);
    mu[i] = record.values.at(layout.result[i]) ? -1 : 1;
  }
  return Snapshot{BasisVector(std::move(axes)), std::move(mu)};
}

bool ShotSnapshotAdapter::next(Snapshot& out) {
  if (!records_.next(rec_)) return false;
  out = snapshot_from_shot_record(rec_, layout_);
  return true;
}

double mitigation_factor(const std::vector<uint32_t>& support, const ReadoutErrorModel& model) {
  model.validate();
  double f = 1.0;
  for (uint32_t q : support) {
    f *= 1.0 / (1.0 - 2.0 * model.at(q));
  }
  return f;
}

namespace {

double inverse_weight(const EstimatorConfig& cfg, uint32_t q, PauliAxis a) {
  if (cfg.weights.empty()) return 3.0;
  double p = cfg.weights.at(q).prob(a);
  if (!(p > 0.0)) {
    throw std::invalid_argument("support letter has zero sampling probability");
  }
  return 1.0 / p;
}

struct CompiledTerm {
  double scaled_coeff = 0.0;
  std::vector<std::pair<uint32_t, PauliAxis>> letters;
};

// Constant plus Pauli terms with all shot-independent factors folded in.
struct CompiledSum {
  double constant = 0.0;
  uint32_t min_register = 0;
  std::vector<CompiledTerm> terms;
};

void validate_config(const EstimatorConfig& cfg, uint32_t n_qubits) {
  if (!cfg.weights.empty()) {
    if (cfg.weights.size() < n_qubits) {
      throw std::invalid_argument("estimator weights smaller than qubit register");
    }
    for (const auto& w : cfg.weights) w.validate();
  }
  if (cfg.mitigation) {
    cfg.mitigation->validate();
    if (cfg.mitigation->flip_probability.size() < n_qubits) {
      throw std::invalid_argument("mitigation model smaller than qubit register");
    }
  }
  if (cfg.aggregator == AggregatorKind::MedianOfMeans && cfg.median_groups < 2) {
    throw std::invalid_argument("median-of-means needs at least two groups");
  }
}

CompiledTerm compile_term(double coeff, const PauliString& p, const EstimatorConfig& cfg) {
  CompiledTerm t;
  t.scaled_coeff = coeff;
  t.letters = p.letters();
  for (const auto& [q, a] : t.letters) {
    t.scaled_coeff *= inverse_weight(cfg, q, a);
    if (cfg.mitigation) {
      t.scaled_coeff *= 1.0 / (1.0 - 2.0 * cfg.mitigation->at(q));
    }
  }
  return t;
}

double snapshot_sum_value(const CompiledSum& sum, const Snapshot& snap) {
  double acc = sum.constant;
  const auto& axes = snap.basis.axes();
  if (axes.size() < sum.min_register) {
    throw std::invalid_argument("snapshot register smaller than observable register");
  }
  for (const CompiledTerm& t : sum.terms) {
    double v = t.scaled_coeff;
    for (const auto& [q, a] : t.letters) {
      if (axes[q] != a) {
        v = 0.0;
        break;
      }
      v *= snap.mu[q];
    }
    acc += v;
  }
  return acc;
}

// Mean or median-of-means over a stream of per-snapshot values.
class Aggregator {
 public:
  Aggregator(AggregatorKind kind, uint32_t groups) : kind_(kind) {
    if (kind_ == AggregatorKind::MedianOfMeans) {
      groups_.resize(groups);
    }
  }

  void add(double v) {
    if (kind_ == AggregatorKind::Mean) {
      total_.add(v);
    } else {
      groups_[next_group_].add(v);
      next_group_ = (next_group_ + 1) % groups_.size();
      ++mom_count_;
    }
  }

  uint64_t count() const {
    return kind_ == AggregatorKind::Mean ? total_.count() : mom_count_;
  }

  EstimateResult result() const {
    EstimateResult r;
    r.shots = count();
    if (kind_ == AggregatorKind::Mean) {
      r.value = total_.mean();
      r.std_err = total_.std_err();
      return r;
    }
    std::vector<double> means;
    means.reserve(groups_.size());
    for (const auto& g : groups_) {
      if (g.count() > 0) means.push_back(g.mean());
    }
    if (means.empty()) return r;
    r.value = median(means);
    if (means.size() >= 2) {
      double m = 0;
      for (double v : means) m += v;
      m /= static_cast<double>(means.size());
      double ss = 0;
      for (double v : means) ss += (v - m) * (v - m);
      double var = ss / static_cast<double>(means.size() - 1);
      r.std_err = std::sqrt(var / static_cast<double>(means.size()));
    }
    return r;
  }

 private:
  AggregatorKind kind_;
  ShadowAccumulator total_;
  std::vector<ShadowAccumulator> groups_;
  size_t next_group_ = 0;
  uint64_t mom_count_ = 0;
};

}  // namespace

double single_snapshot_value(const Snapshot& s, const PauliString& q,
                             const EstimatorConfig& cfg) {
  if (q.n_qubits() > s.basis.n_qubits()) {
    throw std::invalid_argument("observable register larger than snapshot");
  }
  validate_config(cfg, q.n_qubits());
  double v = 1.0;
  const auto& axes = s.basis.axes();
  for (const auto& [qubit, axis] : q.letters()) {
    if (axes[qubit] != axis) return 0.0;
    v *= inverse_weight(cfg, qubit, axis) * s.mu[qubit];
    if (cfg.mitigation) {
      v *= 1.0 / (1.0 - 2.0 * cfg.mitigation->at(qubit));
    }
  }
  return v;
}

namespace {

void compensated_add(double& s, double& comp, double v) {
  double t = s + v;
  if (std::abs(s) >= std::abs(v)) {
    comp += (s - t) + v;
  } else {
    comp += (v - t) + s;
  }
  s = t;
}

}  // namespace

void ShadowAccumulator::add(double v) {
  compensated_add(sum_, sum_comp_, v);
  compensated_add(sumsq_, sumsq_comp_, v * v);
  ++count_;
}

void ShadowAccumulator::merge(const ShadowAccumulator& other) {
  compensated_add(sum_, sum_comp_, other.sum_);
  compensated_add(sum_, sum_comp_, other.sum_comp_);
  compensated_add(sumsq_, sumsq_comp_, other.sumsq_);
  compensated_add(sumsq_, sumsq_comp_, other.sumsq_comp_);
  count_ += other.count_;
}

double ShadowAccumulator::mean() const {
  if (count_ == 0) return 0.0;
  return sum() / static_cast<double>(count_);
}

double ShadowAccumulator::variance() const {
  if (count_ < 2) return 0.0;
  double n = static_cast<double>(count_);
  double m = mean();
  double var = (sum_squares() - n * m * m) / (n - 1.0);
  return var > 0.0 ? var : 0.0;
}

double ShadowAccumulator::std_err() const {
  if (count_ < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(count_));
}

EstimateResult estimate_pauli(SnapshotStream& snaps, const PauliString& obs,
                              const EstimatorConfig& cfg) {
  validate_config(cfg, obs.n_qubits());
  CompiledSum sum;
  sum.min_register = obs.n_qubits();
  if (obs.is_identity()) {
    sum.constant = 1.0;
  } else {
    sum.terms.push_back(compile_term(1.0, obs, cfg));
  }
  Aggregator agg(cfg.aggregator, cfg.median_groups);
  Snapshot s;
  while (snaps.next(s)) {
    agg.add(snapshot_sum_value(sum, s));
  }
  return agg.result();
}

EstimateResult estimate_energy(SnapshotStream& snaps, const Hamiltonian& h,
                               const EstimatorConfig& cfg) {
  validate_config(cfg, h.n_qubits());
  CompiledSum sum;
  sum.min_register = h.n_qubits();
  for (const auto& term : h.terms()) {
    if (term.op.is_identity()) {
      sum.constant += term.coefficient;
    } else {
      sum.terms.push_back(compile_term(term.coefficient, term.op, cfg));
    }
  }
  Aggregator agg(cfg.aggregator, cfg.median_groups);
  Snapshot s;
  while (snaps.next(s)) {
    agg.add(snapshot_sum_value(sum, s));
  }
  return agg.result();
}

ConvergenceTrace convergence_trace(SnapshotStream& snaps, const Hamiltonian& h,
                                   const EstimatorConfig& cfg,
                                   const std::vector<uint64_t>& checkpoints,
                                   std::optional<double> reference) {
  validate_config(cfg, h.n_qubits());
  if (checkpoints.empty()) {
    throw std::invalid_argument("convergence trace needs at least one checkpoint");
  }
  for (size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw std::invalid_argument("checkpoints must be positive and strictly ascending");
    }
  }
  CompiledSum sum;
  sum.min_register = h.n_qubits();
  for (const auto& term : h.terms()) {
    if (term.op.is_identity()) {
      sum.constant += term.coefficient;
    } else {
      sum.terms.push_back(compile_term(term.coefficient, term.op, cfg));
    }
  }
  Aggregator agg(cfg.aggregator, cfg.median_groups);
  ConvergenceTrace trace;
  size_t ci = 0;
  Snapshot s;
  while (ci < checkpoints.size() && snaps.next(s)) {
    agg.add(snapshot_sum_value(sum, s));
    if (agg.count() == checkpoints[ci]) {
      EstimateResult r = agg.result();
      TraceRow row{r.shots, r.value, r.std_err, std::nullopt};
      if (reference) row.abs_error = std::abs(r.value - *reference);
      trace.rows.push_back(row);
      ++ci;
    }
  }
  trace.truncated = ci < checkpoints.size();
  if (trace.truncated && agg.count() > 0 &&
      (trace.rows.empty() || agg.count() > trace.rows.back().shots)) {
    EstimateResult r = agg.result();
    TraceRow row{r.shots, r.value, r.std_err, std::nullopt};
    if (reference) row.abs_error = std::abs(r.value - *reference);
    trace.rows.push_back(row);
  }
  return trace;
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
  bool with_error = false;
  for (const TraceRow& row : trace.rows) {
    if (row.abs_error) with_error = true;
  }
  out << (with_error ? "shots,estimate,stderr,abs_error\n" : "shots,estimate,stderr\n");
  char buf[128];
  for (const TraceRow& row : trace.rows) {
    if (with_error) {
      std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g\n",
                    static_cast<unsigned long long>(row.shots), row.estimate, row.std_err,
                    row.abs_error ? *row.abs_error : 0.0);
    } else {
      std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g\n",
                    static_cast<unsigned long long>(row.shots), row.estimate, row.std_err);
    }
    out << buf;
  }
}

}  // namespace dynshadow
