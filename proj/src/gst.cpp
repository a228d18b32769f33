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

#include "qmpec/gst.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

#include "qmpec/error.hpp"

namespace qmpec {

namespace {

std::vector<PrepLabel> prep_labels(Eigen::Index index, int n) {
  std::vector<PrepLabel> labels(n);
  for (int q = 0; q < n; ++q) labels[q] = static_cast<PrepLabel>(pauli_digit(index, q, n));
  return labels;
}

std::vector<PauliLabel> pauli_labels(Eigen::Index index, int n) {
  std::vector<PauliLabel> labels(n);
  for (int q = 0; q < n; ++q) labels[q] = static_cast<PauliLabel>(pauli_digit(index, q, n));
  return labels;
}

Matrix sample_expectations(const Matrix& exact, std::int64_t shots, std::uint64_t seed, std::uint64_t kind,
                           std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(kind), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  Matrix out(exact.rows(), exact.cols());
  for (Eigen::Index j = 0; j < exact.rows(); ++j) {
    for (Eigen::Index k = 0; k < exact.cols(); ++k) {
      const double p = std::clamp((1.0 + exact(j, k)) / 2.0, 0.0, 1.0);
      std::binomial_distribution<std::int64_t> draw(shots, p);
      out(j, k) = 2.0 * static_cast<double>(draw(rng)) / static_cast<double>(shots) - 1.0;
    }
  }
  return out;
}

Matrix inverse_or_throw(const Matrix& m, const char* what) {
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible()) throw NumericalError(std::string(what) + " is singular");
  return lu.inverse();
}

}  // namespace

NoisyDevice::NoisyDevice(int num_qubits, NoiseModel noise) : num_qubits_(num_qubits), noise_(noise) {
  if (num_qubits < 1 || num_qubits > kMaxPtmQubits) throw ValidationError("device supports 1 to 4 qubits");
  noise_.validate();
  const Eigen::Index dim = ptm_dim(num_qubits);
  preps_.resize(dim, dim);
  observables_.resize(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    preps_.col(k) = noisy_prep(prep_labels(k, num_qubits), noise_).components;
    observables_.row(k) = noisy_pauli_observable(pauli_labels(k, num_qubits), noise_).components;
  }
}

PauliTransferMatrix NoisyDevice::implement(const GateCircuit& circuit) const {
  if (circuit.num_qubits != num_qubits_) throw ValidationError("circuit size does not match the device");
  return noisy_circuit_ptm(circuit, noise_);
}

PauliTransferMatrix NoisyDevice::implement(const BasisOperation& op) const {
  return implement_noisy(op, num_qubits_, noise_);
}

Matrix NoisyDevice::expectations(const PauliTransferMatrix* channel) const {
  if (channel == nullptr) return observables_ * preps_;
  if (channel->num_qubits != num_qubits_) throw ValidationError("channel size does not match the device");
  return observables_ * channel->matrix * preps_;
}

GstDataset run_gst(const NoisyDevice& device, std::span<const PauliTransferMatrix> operators,
                   const BasisOperationSet& basis, GstShots shots, std::uint64_t seed) {
  if (shots && *shots < 1) throw ValidationError("GST shots must be positive");
  if (basis.num_qubits != device.num_qubits()) throw ValidationError("basis set size does not match the device");
  auto measure = [&](const PauliTransferMatrix* channel, std::uint64_t kind, std::uint64_t index) {
    Matrix exact = device.expectations(channel);
    return shots ? sample_expectations(exact, *shots, seed, kind, index) : exact;
  };

  GstDataset out;
  out.num_qubits = device.num_qubits();
  out.shots = shots;
  out.gram = measure(nullptr, 0, 0);
  Eigen::JacobiSVD<Matrix> svd(out.gram);
  const Vector sv = svd.singularValues();
  out.gram_condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(out.gram_condition <= kMaxGramCondition)) {
    std::ostringstream msg;
    msg << "degenerate tomography: Gram matrix condition number " << out.gram_condition << " exceeds "
        << kMaxGramCondition;
    throw SingularTomographyError(msg.str());
  }
  for (std::size_t l = 0; l < operators.size(); ++l) out.operator_data.push_back(measure(&operators[l], 1, l));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const PauliTransferMatrix implemented = device.implement(basis.operations[i]);
    out.basis_data.push_back(measure(&implemented, 2, i));
  }
  return out;
}

PauliTransferMatrix compute_hat(const GstDataset& gst, const Matrix& tilde) {
  if (tilde.rows() != gst.gram.rows() || tilde.cols() != gst.gram.cols())
    throw ValidationError("GST data matrix has wrong shape");
  const Matrix t = transfer_matrix_t(gst.num_qubits);
  Eigen::FullPivLU<Matrix> g(gst.gram);
  if (!g.isInvertible()) throw SingularTomographyError("degenerate tomography: Gram matrix is singular");
  Eigen::FullPivLU<Matrix> t_lu(t);
  return {gst.num_qubits, t * g.solve(tilde) * t_lu.inverse()};
}

PauliTransferMatrix hat_operator(const GstDataset& gst, std::size_t index) {
  if (index >= gst.operator_data.size()) throw ValidationError("operator index out of range");
  return compute_hat(gst, gst.operator_data[index]);
}

std::vector<PauliTransferMatrix> hat_basis(const GstDataset& gst) {
  std::vector<PauliTransferMatrix> out;
  out.reserve(gst.basis_data.size());
  for (const Matrix& b : gst.basis_data) out.push_back(compute_hat(gst, b));
  return out;
}

PauliTransferMatrix inverse_noise(const PauliTransferMatrix& exact, const PauliTransferMatrix& hat,
                                  std::vector<std::string>* warnings) {
  if (exact.num_qubits != hat.num_qubits) throw ValidationError("PTM sizes differ");
  PauliTransferMatrix out{exact.num_qubits, exact.matrix * inverse_or_throw(hat.matrix, "reconstructed operator")};
  const double excess = max_abs(out.matrix - Matrix::Identity(out.dim(), out.dim()));
  if (excess > 1.0 && warnings) {
    std::ostringstream msg;
    msg << "inverse noise map is far from identity (max deviation " << excess
        << "); noise is too large or tomography too poor";
    warnings->push_back(msg.str());
  }
  return out;
}

}  // namespace qmpec
