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

#include "qmpec/ptm.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "qmpec/circuit.hpp"
#include "qmpec/error.hpp"

namespace qmpec {

namespace {

int qubits_of_dim(Eigen::Index dim) {
  if (!is_power_of_two(dim)) throw ValidationError("operator dimension must be a power of two");
  int n = ceil_log2(dim);
  if (n > kMaxPtmQubits) throw ValidationError("PTM simulation supports at most 4 qubits");
  return n;
}

std::vector<std::vector<CMatrix>> build_pauli_bases() {
  const Complex i(0.0, 1.0);
  std::vector<CMatrix> single(4, CMatrix::Zero(2, 2));
  single[0] << 1, 0, 0, 1;
  single[1] << 0, 1, 1, 0;
  single[2] << 0, -i, i, 0;
  single[3] << 1, 0, 0, -1;
  std::vector<std::vector<CMatrix>> bases(kMaxPtmQubits + 1);
  bases[0] = {CMatrix::Identity(1, 1)};
  for (int n = 1; n <= kMaxPtmQubits; ++n)
    for (const CMatrix& p : bases[n - 1])
      for (const CMatrix& s : single) bases[n].push_back(kron(p, s));
  return bases;
}

// tr(a b) without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b) {
  return (a.transpose().cwiseProduct(b)).sum();
}

void check_qubit_list(std::span<const int> qubits, int num_qubits) {
  std::set<int> seen;
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits) throw ValidationError("qubit index out of range");
    if (!seen.insert(q).second) throw ValidationError("repeated qubit index");
  }
}

}  // namespace

const std::vector<CMatrix>& pauli_basis(int num_qubits) {
  static const std::vector<std::vector<CMatrix>> bases = build_pauli_bases();
  if (num_qubits < 0 || num_qubits > kMaxPtmQubits) throw ValidationError("PTM simulation supports at most 4 qubits");
  return bases[num_qubits];
}

PauliTransferMatrix PauliTransferMatrix::identity(int num_qubits) {
  return {num_qubits, Matrix::Identity(ptm_dim(num_qubits), ptm_dim(num_qubits))};
}

PauliTransferMatrix PauliTransferMatrix::then(const PauliTransferMatrix& next) const {
  if (next.num_qubits != num_qubits) throw ValidationError("composing PTMs of different sizes");
  return {num_qubits, next.matrix * matrix};
}

bool PauliTransferMatrix::trace_preserving(double tol) const {
  RowVector first = RowVector::Zero(dim());
  first(0) = 1.0;
  return max_abs(matrix.row(0) - first) <= tol;
}

PauliTransferMatrix ptm_of_unitary(const CMatrix& u) {
  return ptm_of_kraus({u});
}

PauliTransferMatrix ptm_of_kraus(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw ValidationError("channel needs at least one Kraus operator");
  const Eigen::Index d = kraus[0].rows();
  const int n = qubits_of_dim(d);
  CMatrix completeness = CMatrix::Zero(d, d);
  for (const CMatrix& e : kraus) {
    if (e.rows() != d || e.cols() != d) throw ValidationError("Kraus operators must share one square shape");
    completeness += e.adjoint() * e;
  }
  const double defect = max_abs(CMatrix(completeness - CMatrix::Identity(d, d)));
  if (defect > 1e-9) {
    std::ostringstream msg;
    msg << "Kraus operators are not trace preserving: max |sum E^dag E - I| = " << defect;
    throw ValidationError(msg.str());
  }
  const auto& paulis = pauli_basis(n);
  const Eigen::Index dim = ptm_dim(n);
  PauliTransferMatrix out{n, Matrix(dim, dim)};
  for (Eigen::Index t = 0; t < dim; ++t) {
    CMatrix image = CMatrix::Zero(d, d);
    for (const CMatrix& e : kraus) image += e * paulis[t] * e.adjoint();
    for (Eigen::Index s = 0; s < dim; ++s)
      out.matrix(s, t) = trace_product(paulis[s], image).real() / static_cast<double>(d);
  }
  return out;
}

PtmStateVector ptm_of_density(const CMatrix& rho) {
  const int n = qubits_of_dim(rho.rows());
  const auto& paulis = pauli_basis(n);
  PtmStateVector out{n, Vector(ptm_dim(n))};
  for (Eigen::Index s = 0; s < out.components.size(); ++s) out.components(s) = trace_product(paulis[s], rho).real();
  return out;
}

PtmMeasurement ptm_of_observable(const CMatrix& observable) {
  const int n = qubits_of_dim(observable.rows());
  const auto& paulis = pauli_basis(n);
  PtmMeasurement out{n, RowVector(ptm_dim(n))};
  for (Eigen::Index s = 0; s < out.components.size(); ++s)
    out.components(s) = trace_product(paulis[s], observable).real() / static_cast<double>(observable.rows());
  return out;
}

Matrix transfer_matrix_t(int num_qubits) {
  Matrix t(4, 4);
  t << 1, 1, 1, 1,
       0, 0, 1, 0,
       0, 0, 0, 1,
       1, -1, 0, 0;
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < num_qubits; ++q) out = kron(out, t);
  return out;
}

PtmStateVector prep_state_ptm(std::span<const PrepLabel> labels) {
  const Matrix t = transfer_matrix_t(1);
  Matrix v = Matrix::Identity(1, 1);
  for (PrepLabel l : labels) v = kron(v, Matrix(t.col(static_cast<int>(l))));
  const int n = static_cast<int>(labels.size());
  if (n > kMaxPtmQubits) throw ValidationError("PTM simulation supports at most 4 qubits");
  return {n, v.col(0)};
}

PtmMeasurement pauli_observable(std::span<const PauliLabel> labels) {
  Matrix v = Matrix::Identity(1, 1);
  for (PauliLabel l : labels) {
    Matrix e = Matrix::Zero(1, 4);
    e(0, static_cast<int>(l)) = 1.0;
    v = kron(v, e);
  }
  const int n = static_cast<int>(labels.size());
  if (n > kMaxPtmQubits) throw ValidationError("PTM simulation supports at most 4 qubits");
  return {n, v.row(0)};
}

PauliTransferMatrix embed_ptm(const PauliTransferMatrix& op, std::span<const int> qubits, int num_qubits) {
  if (static_cast<int>(qubits.size()) != op.num_qubits) throw ValidationError("qubit list does not match the PTM size");
  if (num_qubits > kMaxPtmQubits) throw ValidationError("PTM simulation supports at most 4 qubits");
  check_qubit_list(qubits, num_qubits);
  const Eigen::Index dim = ptm_dim(num_qubits);
  std::vector<bool> inside(num_qubits, false);
  for (int q : qubits) inside[q] = true;
  PauliTransferMatrix out{num_qubits, Matrix::Zero(dim, dim)};
  for (Eigen::Index s = 0; s < dim; ++s) {
    for (Eigen::Index t = 0; t < dim; ++t) {
      bool spectators_agree = true;
      for (int q = 0; q < num_qubits && spectators_agree; ++q)
        if (!inside[q]) spectators_agree = pauli_digit(s, q, num_qubits) == pauli_digit(t, q, num_qubits);
      if (!spectators_agree) continue;
      Eigen::Index ls = 0, lt = 0;
      for (int q : qubits) {
        ls = ls * 4 + pauli_digit(s, q, num_qubits);
        lt = lt * 4 + pauli_digit(t, q, num_qubits);
      }
      out.matrix(s, t) = op.matrix(ls, lt);
    }
  }
  return out;
}

CMatrix embed_unitary(const CMatrix& u, std::span<const int> qubits, int num_qubits) {
  if (u.rows() != (Eigen::Index{1} << qubits.size()) || u.cols() != u.rows())
    throw ValidationError("unitary size does not match the qubit list");
  check_qubit_list(qubits, num_qubits);
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  std::vector<bool> inside(num_qubits, false);
  for (int q : qubits) inside[q] = true;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      bool spectators_agree = true;
      for (int q = 0; q < num_qubits && spectators_agree; ++q)
        if (!inside[q]) spectators_agree = qubit_bit(i, q, num_qubits) == qubit_bit(j, q, num_qubits);
      if (!spectators_agree) continue;
      Eigen::Index li = 0, lj = 0;
      for (int q : qubits) {
        li = li * 2 + qubit_bit(i, q, num_qubits);
        lj = lj * 2 + qubit_bit(j, q, num_qubits);
      }
      out(i, j) = u(li, lj);
    }
  }
  return out;
}

int sample_outcome(std::span<const double> probs, std::mt19937_64& rng) {
  if (probs.empty()) throw ValidationError("cannot sample from an empty distribution");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("distribution has a negative or NaN entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("distribution does not sum to 1");
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  int last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last = static_cast<int>(i);
    if (u < acc) return last;
  }
  return last;
}

}  // namespace qmpec
