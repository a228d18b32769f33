// Copyright 2026 The qmpec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmpec/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qmpec/error.hpp"
#include "qmpec/statistics.hpp"
#include "qmpec/synthesis.hpp"

namespace qmpec {

namespace {

QuasiprobDecomposition trivial_decomposition(std::size_t size, std::size_t index) {
  std::vector<double> q(size, 0.0);
  q[index] = 1.0;
  return QuasiprobDecomposition::from_coefficients(std::move(q));
}

std::vector<RowVector> single_qubit_observables(const NoiseModel& noise) {
  std::vector<RowVector> out;
  for (int j = 0; j < 4; ++j) {
    const PauliLabel label[1] = {static_cast<PauliLabel>(j)};
    out.push_back(noisy_pauli_observable(label, noise).components);
  }
  return out;
}

MeasurementScheme z_scheme() {
  return measurement_scheme(trivial_decomposition(4, static_cast<std::size_t>(PauliLabel::Z)));
}

// All tuples of `count` indices into `weights`, with product coefficients;
// the first index is the most significant.
std::vector<std::pair<std::vector<int>, double>> tuples(const std::vector<double>& weights, int count) {
  std::vector<std::pair<std::vector<int>, double>> out{{{}, 1.0}};
  for (int c = 0; c < count; ++c) {
    std::vector<std::pair<std::vector<int>, double>> next;
    for (const auto& [idx, coef] : out) {
      for (std::size_t k = 0; k < weights.size(); ++k) {
        auto extended = idx;
        extended.push_back(static_cast<int>(k));
        next.emplace_back(std::move(extended), coef * weights[k]);
      }
    }
    out = std::move(next);
  }
  return out;
}

std::mt19937_64 block_stream(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

WordCode PecPlan::word_count() const {
  return qmpec::word_count(outcomes_per_step(), steps);
}

double PecPlan::stage_cost() const {
  return std::pow(prep_decomposition.cost, ancilla_qubits) * correction_decomposition.cost *
         std::pow(measurement.sampler.cost, ancilla_qubits);
}

double PecPlan::total_cost() const {
  return std::pow(prep_decomposition.cost, memory_qubits) * std::pow(stage_cost(), steps);
}

void PecPlan::validate() const {
  if (memory_qubits < 0 || ancilla_qubits < 1) throw ValidationError("plan needs at least one ancilla qubit");
  if (num_qubits() > kMaxPtmQubits) throw ValidationError("plan exceeds the PTM simulator size");
  if (steps < 1) throw ValidationError("plan needs at least one step");
  if (operator_ptm.num_qubits != num_qubits()) throw ValidationError("operator size does not match the plan");
  if (corrections.empty() || corrections.size() != correction_decomposition.size())
    throw ValidationError("corrections and their decomposition disagree");
  for (const PauliTransferMatrix& c : corrections)
    if (c.num_qubits != num_qubits()) throw ValidationError("correction size does not match the plan");
  if (preps.empty() || preps.size() != prep_decomposition.size())
    throw ValidationError("preparations and their decomposition disagree");
  for (const Vector& p : preps)
    if (p.size() != 4) throw ValidationError("preparations must be single-qubit PTM vectors");
  for (const RowVector& o : observables)
    if (o.size() != 4) throw ValidationError("observables must be single-qubit PTM rows");
  if (measurement.variants.empty()) throw ValidationError("measurement scheme is empty");
  for (const MeasurementVariant& v : measurement.variants)
    if (v.observable < 0 || static_cast<std::size_t>(v.observable) >= observables.size())
      throw ValidationError("measurement variant references a missing observable");
}

PecPlan ideal_plan(const PauliTransferMatrix& ideal, int memory_qubits, int ancilla_qubits, int steps) {
  PecPlan plan;
  plan.memory_qubits = memory_qubits;
  plan.ancilla_qubits = ancilla_qubits;
  plan.steps = steps;
  plan.operator_ptm = ideal;
  plan.corrections = {PauliTransferMatrix::identity(ideal.num_qubits)};
  plan.correction_decomposition = trivial_decomposition(1, 0);
  plan.preps = {transfer_matrix_t(1).col(0)};
  plan.prep_decomposition = trivial_decomposition(1, 0);
  plan.observables = single_qubit_observables(NoiseModel{});
  plan.measurement = z_scheme();
  plan.validate();
  return plan;
}

PecPlan unmitigated_plan(const PauliTransferMatrix& implemented, const NoiseModel& noise, int memory_qubits,
                         int ancilla_qubits, int steps) {
  PecPlan plan = ideal_plan(implemented, memory_qubits, ancilla_qubits, steps);
  const PrepLabel zero[1] = {PrepLabel::Zero};
  plan.preps = {noisy_prep(zero, noise).components};
  plan.observables = single_qubit_observables(noise);
  return plan;
}

PecSampler::PecSampler(PecPlan plan) : plan_(std::move(plan)) {
  plan_.validate();
  const int m = plan_.memory_qubits;
  const int a = plan_.ancilla_qubits;
  const Eigen::Index da = ptm_dim(a);
  memory_dim_ = ptm_dim(m);
  const Eigen::Index dm = memory_dim_;
  const int outcomes = plan_.outcomes_per_step();

  auto collect = [](const std::vector<double>& weights, int count, std::vector<JointChoice>& choices,
                    QuasiprobDecomposition& sampler) {
    std::vector<double> coefficients;
    for (auto& [idx, coef] : tuples(weights, count)) {
      choices.push_back({idx, coef});
      coefficients.push_back(coef);
    }
    sampler = QuasiprobDecomposition::from_coefficients(std::move(coefficients));
  };
  collect(plan_.prep_decomposition.coefficients, m, memory_preps_, memory_sampler_);
  collect(plan_.prep_decomposition.coefficients, a, ancilla_preps_, ancilla_sampler_);
  std::vector<double> variant_weights;
  for (const MeasurementVariant& v : plan_.measurement.variants) variant_weights.push_back(v.coefficient);
  collect(variant_weights, a, variants_, variant_sampler_);

  const std::size_t nk = ancilla_preps_.size();
  const std::size_t ni = plan_.corrections.size();
  const std::size_t nv = variants_.size();
  tables_.assign(nk * ni * nv * outcomes * dm * dm, 0.0);

  // Effect rows for every (variant tuple, outcome).
  std::vector<RowVector> effects(nv * outcomes);
  for (std::size_t v = 0; v < nv; ++v) {
    for (int x = 0; x < outcomes; ++x) {
      RowVector e = RowVector::Ones(1);
      for (int q = 0; q < a; ++q) {
        const MeasurementVariant& var = plan_.measurement.variants[variants_[v].indices[q]];
        const int bit = (x >> (a - 1 - q)) & 1;
        const double s = (bit != 0) != var.flipped ? -1.0 : 1.0;
        RowVector single = plan_.observables[var.observable] * s;
        single(0) += 1.0;
        single /= 2.0;
        e = kron(Matrix(e), Matrix(single)).row(0);
      }
      effects[v * outcomes + x] = e;
    }
  }

  const Matrix& op = plan_.operator_ptm.matrix;
  for (std::size_t k = 0; k < nk; ++k) {
    Vector anc = Vector::Ones(1);
    for (int idx : ancilla_preps_[k].indices) anc = kron(Matrix(anc), Matrix(plan_.preps[idx])).col(0);
    Matrix pk(op.rows(), dm);
    for (Eigen::Index mu = 0; mu < dm; ++mu) pk.col(mu) = op.middleCols(mu * da, da) * anc;
    for (std::size_t i = 0; i < ni; ++i) {
      if (plan_.correction_decomposition.coefficients[i] == 0.0) continue;
      const Matrix q = plan_.corrections[i].matrix * pk;
      for (std::size_t v = 0; v < nv; ++v) {
        for (int x = 0; x < outcomes; ++x) {
          const RowVector& e = effects[v * outcomes + x];
          Eigen::Map<Matrix> w(&tables_[(((k * ni + i) * nv + v) * outcomes + x) * dm * dm], dm, dm);
          for (Eigen::Index mu = 0; mu < dm; ++mu) w.row(mu) = e * q.middleRows(mu * da, da);
        }
      }
    }
  }
}

const double* PecSampler::table(std::size_t prep, std::size_t correction, std::size_t variant, int outcome) const {
  const std::size_t ni = plan_.corrections.size();
  const std::size_t nv = variants_.size();
  const auto dm = static_cast<std::size_t>(memory_dim_);
  return &tables_[(((prep * ni + correction) * nv + variant) * plan_.outcomes_per_step() + outcome) * dm * dm];
}

Vector PecSampler::initial_memory(std::size_t choice, double* coefficient) const {
  Vector mem = Vector::Ones(1);
  for (int idx : memory_preps_[choice].indices) mem = kron(Matrix(mem), Matrix(plan_.preps[idx])).col(0);
  if (coefficient) *coefficient = memory_preps_[choice].coefficient;
  return mem;
}

RunOutcome PecSampler::run(std::mt19937_64& rng) const {
  const Eigen::Index dm = memory_dim_;
  const int outcomes = plan_.outcomes_per_step();
  RunOutcome out;
  double coef = 1.0;
  Vector mem = initial_memory(memory_sampler_.sample(rng), &coef);
  if (coef < 0.0) out.sign = -out.sign;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Vector> branch(outcomes, Vector(dm));
  std::vector<double> probs(outcomes);
  for (int step = 0; step < plan_.steps; ++step) {
    const std::size_t k = ancilla_sampler_.sample(rng);
    const std::size_t i = plan_.correction_decomposition.sample(rng);
    const std::size_t v = variant_sampler_.sample(rng);
    out.sign *= (ancilla_preps_[k].coefficient < 0.0 ? -1 : 1) * plan_.correction_decomposition.sign(i) *
                (variants_[v].coefficient < 0.0 ? -1 : 1);
    double total = 0.0;
    for (int x = 0; x < outcomes; ++x) {
      branch[x].noalias() = Eigen::Map<const Matrix>(table(k, i, v, x), dm, dm) * mem;
      probs[x] = std::max(0.0, branch[x](0));
      total += probs[x];
    }
    if (!(total > 0.0)) throw NumericalError("simulated state lost its normalization");
    const double u = uniform(rng) * total;
    double acc = 0.0;
    int chosen = -1;
    for (int x = 0; x < outcomes; ++x) {
      if (probs[x] <= 0.0) continue;
      acc += probs[x];
      chosen = x;
      if (u < acc) break;
    }
    mem = branch[chosen] / branch[chosen](0);
    out.word = out.word * static_cast<WordCode>(outcomes) + static_cast<WordCode>(chosen);
  }
  return out;
}

std::vector<double> PecSampler::expected_distribution() const {
  const Eigen::Index dm = memory_dim_;
  const int outcomes = plan_.outcomes_per_step();
  std::vector<Matrix> step_maps(outcomes, Matrix::Zero(dm, dm));
  for (std::size_t k = 0; k < ancilla_preps_.size(); ++k) {
    for (std::size_t i = 0; i < plan_.corrections.size(); ++i) {
      const double qi = plan_.correction_decomposition.coefficients[i];
      if (qi == 0.0) continue;
      for (std::size_t v = 0; v < variants_.size(); ++v) {
        const double c = ancilla_preps_[k].coefficient * qi * variants_[v].coefficient;
        for (int x = 0; x < outcomes; ++x) step_maps[x] += c * Eigen::Map<const Matrix>(table(k, i, v, x), dm, dm);
      }
    }
  }
  Vector mem0 = Vector::Zero(dm);
  for (std::size_t c = 0; c < memory_preps_.size(); ++c) {
    double coef = 1.0;
    const Vector mem = initial_memory(c, &coef);
    mem0 += coef * mem;
  }
  std::vector<double> out(plan_.word_count(), 0.0);
  std::vector<std::pair<WordCode, Vector>> frontier{{0, mem0}};
  for (int step = 0; step < plan_.steps; ++step) {
    std::vector<std::pair<WordCode, Vector>> next;
    for (const auto& [word, mem] : frontier)
      for (int x = 0; x < outcomes; ++x)
        next.emplace_back(word * static_cast<WordCode>(outcomes) + x, step_maps[x] * mem);
    frontier = std::move(next);
  }
  for (const auto& [word, mem] : frontier) out[word] = mem(0);
  return out;
}

RunOutcome monte_carlo_run(const PecSampler& sampler, std::mt19937_64& rng) {
  return sampler.run(rng);
}

double MitigatedDistribution::sum() const {
  return std::accumulate(p_qem.begin(), p_qem.end(), 0.0);
}

std::vector<double> MitigatedDistribution::clipped() const {
  std::vector<double> out(p_qem.size());
  double total = 0.0;
  for (std::size_t w = 0; w < p_qem.size(); ++w) {
    out[w] = std::max(0.0, p_qem[w]);
    total += out[w];
  }
  if (!(total > 0.0)) throw NumericalError("all mitigated probabilities are non-positive");
  for (double& p : out) p /= total;
  return out;
}

MitigatedDistribution run_pec(const PecSampler& sampler, std::int64_t runs, std::uint64_t seed,
                              std::int64_t chunk_size, const RecordSink& sink) {
  if (runs < 1) throw ValidationError("Monte Carlo needs at least one run");
  if (chunk_size < 0) throw ValidationError("chunk size must be non-negative");
  const PecPlan& plan = sampler.plan();
  const WordCode words = plan.word_count();
  MitigatedDistribution out;
  out.outcomes_per_step = plan.outcomes_per_step();
  out.steps = plan.steps;
  out.total_cost = plan.total_cost();
  out.stage_cost = plan.stage_cost();
  out.runs = runs;
  out.sigma_predicted = out.total_cost / std::sqrt(static_cast<double>(runs));
  out.chunk_size = chunk_size;
  out.positive.assign(words, 0);
  out.negative.assign(words, 0);
  for (WordCode w = 0; w < words; ++w) out.labels.push_back(word_to_string(w, out.outcomes_per_step, plan.steps));

  std::vector<std::int64_t> chunk_pos(words, 0), chunk_neg(words, 0);
  std::int64_t in_chunk = 0;
  auto flush_chunk = [&]() {
    std::vector<double> est(words);
    for (WordCode w = 0; w < words; ++w)
      est[w] = out.total_cost * static_cast<double>(chunk_pos[w] - chunk_neg[w]) / static_cast<double>(in_chunk);
    out.chunk_estimates.push_back(std::move(est));
    std::fill(chunk_pos.begin(), chunk_pos.end(), 0);
    std::fill(chunk_neg.begin(), chunk_neg.end(), 0);
    in_chunk = 0;
  };

  std::mt19937_64 rng;
  for (std::int64_t r = 0; r < runs; ++r) {
    if (r % kRunsPerStream == 0) rng = block_stream(seed, static_cast<std::uint64_t>(r / kRunsPerStream));
    const RunOutcome o = sampler.run(rng);
    (o.sign > 0 ? out.positive : out.negative)[o.word] += 1;
    if (sink) sink(r, o.word, o.sign);
    if (chunk_size > 0) {
      (o.sign > 0 ? chunk_pos : chunk_neg)[o.word] += 1;
      if (++in_chunk == chunk_size) flush_chunk();
    }
  }
  if (chunk_size > 0 && in_chunk > 0) flush_chunk();

  out.p_qem.resize(words);
  for (WordCode w = 0; w < words; ++w)
    out.p_qem[w] = out.total_cost * static_cast<double>(out.positive[w] - out.negative[w]) / static_cast<double>(runs);
  return out;
}

PecPlan PecSetup::mitigated_plan(int steps) const {
  PecPlan plan;
  plan.memory_qubits = memory_qubits;
  plan.ancilla_qubits = ancilla_qubits;
  plan.steps = steps;
  plan.operator_ptm = implemented;
  plan.corrections = implemented_basis;
  plan.correction_decomposition = correction;
  plan.preps = device_preps;
  plan.prep_decomposition = state_measurement.rho;
  plan.observables = device_observables;
  plan.measurement = measurement;
  plan.validate();
  return plan;
}

PecPlan PecSetup::unmitigated_plan(int steps) const {
  return qmpec::unmitigated_plan(implemented, noise, memory_qubits, ancilla_qubits, steps);
}

PecPlan PecSetup::ideal_plan(int steps) const {
  return qmpec::ideal_plan(ideal, memory_qubits, ancilla_qubits, steps);
}

PecSetup device_setup(const GateCircuit& circuit, int memory_qubits, const NoiseModel& noise) {
  const int n = circuit.num_qubits;
  if (memory_qubits < 0 || memory_qubits >= n) throw ValidationError("circuit needs at least one ancilla qubit");
  if (n > 2) throw ValidationError("error mitigation supports circuits on at most 2 qubits");
  PecSetup s;
  s.memory_qubits = memory_qubits;
  s.ancilla_qubits = n - memory_qubits;
  s.noise = noise;
  s.ideal = ptm_of_unitary(reconstruct(circuit).matrix());
  const NoisyDevice device(n, noise);
  s.implemented = device.implement(circuit);
  s.basis = build_basis_set(n);
  for (const BasisOperation& op : s.basis.operations) s.implemented_basis.push_back(device.implement(op));
  const NoisyDevice single(1, noise);
  for (Eigen::Index k = 0; k < 4; ++k) s.device_preps.push_back(single.prep_matrix().col(k));
  for (Eigen::Index j = 0; j < 4; ++j) s.device_observables.push_back(single.observable_matrix().row(j));
  return s;
}

PecSetup prepare_pec(const GateCircuit& circuit, int memory_qubits, const NoiseModel& noise, GstShots shots,
                     std::uint64_t gst_seed) {
  PecSetup s = device_setup(circuit, memory_qubits, noise);
  const NoisyDevice device(circuit.num_qubits, noise);
  const PauliTransferMatrix operators[1] = {s.implemented};
  s.gst = run_gst(device, operators, s.basis, shots, gst_seed);
  s.hat = hat_operator(s.gst, 0);
  s.inverse_noise = inverse_noise(s.ideal, s.hat, &s.warnings);
  s.correction = decompose_quasiprob(s.inverse_noise, hat_basis(s.gst));

  const NoisyDevice single(1, noise);
  s.gst_single = run_gst(single, {}, BasisOperationSet{1, {}}, shots, gst_seed + 1);
  s.state_measurement = decompose_state_measurement(s.gst_single);
  s.measurement = measurement_scheme(s.state_measurement.measurement);
  return s;
}

GstScaling gst_error_scaling(const NoiseModel& noise, const std::vector<std::int64_t>& shot_grid, int repetitions,
                             std::uint64_t seed) {
  if (shot_grid.size() < 2) throw ValidationError("shot grid needs at least two points");
  if (repetitions < 1) throw ValidationError("need at least one repetition");
  const auto [lo, hi] = std::minmax_element(shot_grid.begin(), shot_grid.end());
  if (*lo < 1) throw ValidationError("shot counts must be positive");
  if (static_cast<double>(*hi) / static_cast<double>(*lo) < 100.0)
    throw ValidationError("shot grid must span at least two decades");

  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const ZyzAngles z = zyz_decompose(x);
  GateCircuit circuit;
  circuit.num_qubits = 1;
  circuit.gates.push_back(SingleZYZ{0, z.gamma, z.phi, z.theta, z.lambda});
  circuit.leaf_blocks = 1;

  const NoisyDevice device(1, noise);
  const PauliTransferMatrix operators[1] = {device.implement(circuit)};
  const PauliTransferMatrix ideal = ptm_of_unitary(x);
  const BasisOperationSet basis = build_basis_set(1);

  auto cost_of = [&](const GstDataset& gst, const PauliTransferMatrix& hat) {
    return decompose_quasiprob(inverse_noise(ideal, hat), hat_basis(gst)).cost;
  };

  GstScaling out;
  const GstDataset exact = run_gst(device, operators, basis, std::nullopt, seed);
  const PauliTransferMatrix hat_exact = hat_operator(exact, 0);
  out.exact_error = max_abs(hat_exact.matrix - operators[0].matrix);
  out.exact_cost = cost_of(exact, hat_exact);
  for (std::size_t g = 0; g < shot_grid.size(); ++g) {
    double err = 0.0, drift = 0.0;
    for (int r = 0; r < repetitions; ++r) {
      const std::uint64_t s = seed + 1 + g * 1000003ULL + static_cast<std::uint64_t>(r);
      const GstDataset gst = run_gst(device, operators, basis, shot_grid[g], s);
      const PauliTransferMatrix hat = hat_operator(gst, 0);
      err += max_abs(hat.matrix - hat_exact.matrix);
      drift += std::abs(cost_of(gst, hat) - out.exact_cost);
    }
    out.shots.push_back(shot_grid[g]);
    out.mean_error.push_back(err / repetitions);
    out.mean_cost_drift.push_back(drift / repetitions);
  }
  std::vector<double> xs(out.shots.begin(), out.shots.end());
  out.slope = loglog_slope(xs, out.mean_error);
  return out;
}

}  // namespace qmpec
