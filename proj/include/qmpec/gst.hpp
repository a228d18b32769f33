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

#ifndef QMPEC_GST_HPP
#define QMPEC_GST_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmpec/basis_set.hpp"
#include "qmpec/noise.hpp"
#include "qmpec/ptm.hpp"

namespace qmpec {

// Shots per circuit and observable; nullopt means exact expectations.
using GstShots = std::optional<std::int64_t>;

// Evaluates prepare-operate-measure circuits on a simulated noisy device.
class NoisyDevice {
 public:
  NoisyDevice(int num_qubits, NoiseModel noise);

  int num_qubits() const { return num_qubits_; }
  const NoiseModel& noise() const { return noise_; }

  // Column k: the noisy version of preparation k (labels in T-column order).
  const Matrix& prep_matrix() const { return preps_; }
  // Row j: the noisy version of Pauli observable j.
  const Matrix& observable_matrix() const { return observables_; }

  PauliTransferMatrix implement(const GateCircuit& circuit) const;
  PauliTransferMatrix implement(const BasisOperation& op) const;

  // Exact expectations tr(M_j O(rho_k)) for every (j, k); no channel gives g.
  Matrix expectations(const PauliTransferMatrix* channel) const;

 private:
  int num_qubits_;
  NoiseModel noise_;
  Matrix preps_;
  Matrix observables_;
};

struct GstDataset {
  int num_qubits = 1;
  GstShots shots;
  Matrix gram;
  std::vector<Matrix> operator_data;
  std::vector<Matrix> basis_data;
  double gram_condition = 1.0;
};

inline constexpr double kMaxGramCondition = 1e8;

// `operators` are the channels as implemented on the device; basis operations
// are implemented by the device itself. In shot mode every (prep, observable)
// pair gets `shots` binomial +/-1 samples; each matrix draws from its own
// stream so datasets stay comparable when operators are added.
GstDataset run_gst(const NoisyDevice& device, std::span<const PauliTransferMatrix> operators,
                   const BasisOperationSet& basis, GstShots shots, std::uint64_t seed);

// T g^{-1} tilde T^{-1}.
PauliTransferMatrix compute_hat(const GstDataset& gst, const Matrix& tilde);
PauliTransferMatrix hat_operator(const GstDataset& gst, std::size_t index);
std::vector<PauliTransferMatrix> hat_basis(const GstDataset& gst);

// O_exact Ohat^{-1}. Appends a warning when ||N^{-1} - I||_max > 1.
PauliTransferMatrix inverse_noise(const PauliTransferMatrix& exact, const PauliTransferMatrix& hat,
                                  std::vector<std::string>* warnings = nullptr);

}  // namespace qmpec

#endif  // QMPEC_GST_HPP
