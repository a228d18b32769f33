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

#ifndef QMPEC_MONTE_CARLO_HPP
#define QMPEC_MONTE_CARLO_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qmpec/basis_set.hpp"
#include "qmpec/circuit.hpp"
#include "qmpec/gst.hpp"
#include "qmpec/noise.hpp"
#include "qmpec/process.hpp"
#include "qmpec/quasiprob.hpp"

namespace qmpec {

// A t-step memory circuit: memory qubits are prepared once, then each step
// prepares the ancillas, applies the operator, applies a sampled correction
// and measures the ancillas in Z. Preparations and observables are
// single-qubit and shared by every qubit.
struct PecPlan {
  int memory_qubits = 0;
  int ancilla_qubits = 1;
  int steps = 1;
  PauliTransferMatrix operator_ptm;
  std::vector<PauliTransferMatrix> corrections;
  QuasiprobDecomposition correction_decomposition;
  std::vector<Vector> preps;
  QuasiprobDecomposition prep_decomposition;
  std::vector<RowVector> observables;
  MeasurementScheme measurement;

  int num_qubits() const { return memory_qubits + ancilla_qubits; }
  int outcomes_per_step() const { return 1 << ancilla_qubits; }
  WordCode word_count() const;
  // C_rho^a C_O C_M^a
  double stage_cost() const;
  // C_rho^m (C_rho^a C_O C_M^a)^t
  double total_cost() const;
  void validate() const;
};

// Noiseless execution of the ideal operator: one trivial correction, ideal preparations
// and observables.
PecPlan ideal_plan(const PauliTransferMatrix& ideal, int memory_qubits, int ancilla_qubits, int steps);

// Execution of the implemented operator on the noisy device without any
// mitigation.
PecPlan unmitigated_plan(const PauliTransferMatrix& implemented, const NoiseModel& noise, int memory_qubits,
                         int ancilla_qubits, int steps);

struct RunOutcome {
  WordCode word = 0;
  int sign = 1;
};

// Precomputed per-step transfer tables for a plan.
class PecSampler {
 public:
  explicit PecSampler(PecPlan plan);

  const PecPlan& plan() const { return plan_; }
  RunOutcome run(std::mt19937_64& rng) const;
  // Expectation of the estimator for every word, by exact enumeration of the
  // signed mixture.
  std::vector<double> expected_distribution() const;

 private:
  struct JointChoice {
    std::vector<int> indices;
    double coefficient = 1.0;
  };

  const double* table(std::size_t prep, std::size_t correction, std::size_t variant, int outcome) const;
  Vector initial_memory(std::size_t choice, double* coefficient) const;

  PecPlan plan_;
  Eigen::Index memory_dim_ = 1;
  std::vector<JointChoice> memory_preps_;
  std::vector<JointChoice> ancilla_preps_;
  std::vector<JointChoice> variants_;
  QuasiprobDecomposition memory_sampler_;
  QuasiprobDecomposition ancilla_sampler_;
  QuasiprobDecomposition variant_sampler_;
  std::vector<double> tables_;
};

RunOutcome monte_carlo_run(const PecSampler& sampler, std::mt19937_64& rng);

struct MitigatedDistribution {
  int outcomes_per_step = 2;
  int steps = 1;
  std::vector<std::string> labels;
  std::vector<double> p_qem;  // raw estimates, may leave [0, 1]
  std::vector<std::int64_t> positive;
  std::vector<std::int64_t> negative;
  double total_cost = 1.0;
  double stage_cost = 1.0;
  std::int64_t runs = 0;
  double sigma_predicted = 0.0;
  std::int64_t chunk_size = 0;
  std::vector<std::vector<double>> chunk_estimates;  // [chunk][word]

  double sum() const;
  // Negative values clipped to zero, then renormalised.
  std::vector<double> clipped() const;
};

using RecordSink = std::function<void(std::int64_t run, WordCode word, int sign)>;

inline constexpr std::int64_t kRunsPerStream = 4096;

// Runs are grouped in blocks of kRunsPerStream; each block draws from its own
// generator, so results do not depend on chunking.
MitigatedDistribution run_pec(const PecSampler& sampler, std::int64_t runs, std::uint64_t seed,
                              std::int64_t chunk_size = 0, const RecordSink& sink = {});

// Everything needed to mitigate one operator on one device.
struct PecSetup {
  int memory_qubits = 0;
  int ancilla_qubits = 1;
  PauliTransferMatrix ideal;
  PauliTransferMatrix implemented;
  PauliTransferMatrix hat;
  PauliTransferMatrix inverse_noise;
  GstDataset gst;         // operator and basis on all qubits
  GstDataset gst_single;  // single-qubit preparations and observables
  BasisOperationSet basis;
  std::vector<PauliTransferMatrix> implemented_basis;
  QuasiprobDecomposition correction;
  StateMeasurementDecomposition state_measurement;
  MeasurementScheme measurement;
  NoiseModel noise;
  std::vector<Vector> device_preps;
  std::vector<RowVector> device_observables;
  std::vector<std::string> warnings;

  PecPlan mitigated_plan(int steps) const;
  PecPlan unmitigated_plan(int steps) const;
  PecPlan ideal_plan(int steps) const;
};

// Device-side fields only: ideal and implemented operator, implemented basis,
// noisy single-qubit preparations and observables. Tomography and
// decompositions are left empty.
PecSetup device_setup(const GateCircuit& circuit, int memory_qubits, const NoiseModel& noise);

// device_setup followed by GST and all decompositions.
PecSetup prepare_pec(const GateCircuit& circuit, int memory_qubits, const NoiseModel& noise, GstShots shots,
                     std::uint64_t gst_seed);

struct GstScaling {
  std::vector<std::int64_t> shots;
  std::vector<double> mean_error;  // mean ||O_hat(N) - O_hat(exact)||_max
  std::vector<double> mean_cost_drift;  // mean |C(N) - C(exact)|
  double exact_error = 0.0;  // ||O_hat(exact) - O_implemented||_max, zero without prep noise
  double exact_cost = 1.0;
  double slope = 0.0;
};

// Single-qubit X gate on the given noise: reconstruction error against shots.
GstScaling gst_error_scaling(const NoiseModel& noise, const std::vector<std::int64_t>& shot_grid,
                             int repetitions, std::uint64_t seed);

}  // namespace qmpec

#endif  // QMPEC_MONTE_CARLO_HPP
