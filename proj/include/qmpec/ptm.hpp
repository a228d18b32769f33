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

// Pauli transfer matrix conventions used throughout:
//   Paulis ordered I, X, Y, Z per qubit, qubit 0 the most significant digit.
//   state       r_s    = tr(s rho)
//   channel     O_{st} = tr(s O(t)) / 2^n
//   observable  M_s    = tr(s M) / 2^n, so <M> = sum_s M_s r_s.

#ifndef QMPEC_PTM_HPP
#define QMPEC_PTM_HPP

#include <random>
#include <span>
#include <vector>

#include "qmpec/linalg.hpp"

namespace qmpec {

inline constexpr int kMaxPtmQubits = 4;

struct PauliTransferMatrix {
  int num_qubits = 1;
  Matrix matrix;

  static PauliTransferMatrix identity(int num_qubits);
  Eigen::Index dim() const { return matrix.rows(); }
  PauliTransferMatrix then(const PauliTransferMatrix& next) const;  // next after this
  bool trace_preserving(double tol = 1e-9) const;
};

struct PtmStateVector {
  int num_qubits = 1;
  Vector components;
};

struct PtmMeasurement {
  int num_qubits = 1;
  RowVector components;

  double expectation(const PtmStateVector& state) const { return components.dot(state.components); }
};

enum class PauliLabel { I = 0, X = 1, Y = 2, Z = 3 };
enum class PrepLabel { Zero = 0, One = 1, Plus = 2, YPlus = 3 };

inline Eigen::Index ptm_dim(int num_qubits) { return Eigen::Index{1} << (2 * num_qubits); }

// Digit (0..3) of qubit q within a Pauli-string index.
inline int pauli_digit(Eigen::Index index, int qubit, int num_qubits) {
  return static_cast<int>((index >> (2 * (num_qubits - 1 - qubit))) & 3);
}

const std::vector<CMatrix>& pauli_basis(int num_qubits);

PauliTransferMatrix ptm_of_unitary(const CMatrix& u);
PauliTransferMatrix ptm_of_kraus(const std::vector<CMatrix>& kraus);
PtmStateVector ptm_of_density(const CMatrix& rho);
PtmMeasurement ptm_of_observable(const CMatrix& observable);

// Rows I, X, Y, Z; columns are the preparations |0>, |1>, |+>, |y+>.
Matrix transfer_matrix_t(int num_qubits);

PtmStateVector prep_state_ptm(std::span<const PrepLabel> labels);
PtmMeasurement pauli_observable(std::span<const PauliLabel> labels);

// Lifts a channel on `qubits` (in its own tensor order) to an n-qubit channel.
PauliTransferMatrix embed_ptm(const PauliTransferMatrix& op, std::span<const int> qubits, int num_qubits);

// Full-register unitary of a k-qubit unitary acting on `qubits`.
CMatrix embed_unitary(const CMatrix& u, std::span<const int> qubits, int num_qubits);

// Draws an index by inverse CDF from one uniform variate.
int sample_outcome(std::span<const double> probs, std::mt19937_64& rng);

}  // namespace qmpec

#endif  // QMPEC_PTM_HPP
