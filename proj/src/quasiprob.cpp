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

#include "qmpec/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmpec/error.hpp"
#include "qmpec/linear_program.hpp"

namespace qmpec {

QuasiprobDecomposition QuasiprobDecomposition::from_coefficients(std::vector<double> q, double residual) {
  if (q.empty()) throw ValidationError("decomposition needs at least one coefficient");
  QuasiprobDecomposition out;
  out.coefficients = std::move(q);
  out.residual = residual;
  for (double v : out.coefficients) out.cost += std::abs(v);
  if (!(out.cost > 0.0)) throw NumericalError("decomposition has zero cost");
  double acc = 0.0;
  out.cdf.reserve(out.coefficients.size());
  for (double v : out.coefficients) {
    acc += std::abs(v);
    out.cdf.push_back(acc / out.cost);
  }
  out.cdf.back() = 1.0;
  return out;
}

std::size_t QuasiprobDecomposition::index_for(double u) const {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  std::size_t i = static_cast<std::size_t>(it - cdf.begin());
  // Skip zero-weight entries sharing the same cdf value.
  while (coefficients[i] == 0.0 && i + 1 < coefficients.size()) ++i;
  return i;
}

std::size_t QuasiprobDecomposition::sample(std::mt19937_64& rng) const {
  return index_for(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
}

QuasiprobDecomposition decompose_quasiprob(const PauliTransferMatrix& target,
                                           std::span<const PauliTransferMatrix> basis) {
  if (basis.empty()) throw ValidationError("empty basis");
  const Eigen::Index dim = target.dim();
  const Eigen::Index len = dim * dim;
  Matrix a(len, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].num_qubits != target.num_qubits) throw ValidationError("basis and target sizes differ");
    a.col(static_cast<Eigen::Index>(i)) = basis[i].matrix.reshaped();
  }
  const Vector b = target.matrix.reshaped();
  L1Solution sol;
  try {
    sol = minimize_l1(a, b, kDecompositionTolerance);
  } catch (const SpanDeficiencyError&) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
    const Vector r = a * cod.solve(b) - b;
    Eigen::Index worst = 0;
    const double value = r.cwiseAbs().maxCoeff(&worst);
    std::ostringstream msg;
    msg << "target not in the span of the basis: worst residual " << value << " at PTM entry (" << worst % dim
        << ", " << worst / dim << ")";
    throw SpanDeficiencyError(msg.str());
  }
  return QuasiprobDecomposition::from_coefficients(std::vector<double>(sol.x.begin(), sol.x.end()), sol.residual);
}

StateMeasurementDecomposition decompose_state_measurement(const GstDataset& gst) {
  const int n = gst.num_qubits;
  const Matrix t = transfer_matrix_t(n);
  Eigen::FullPivLU<Matrix> t_lu(t);
  Eigen::FullPivLU<Matrix> g_lu(gst.gram);
  if (!g_lu.isInvertible()) throw SingularTomographyError("degenerate tomography: Gram matrix is singular");

  const std::vector<PrepLabel> zeros(n, PrepLabel::Zero);
  const Vector rho_exact = prep_state_ptm(zeros).components;
  const Vector q_rho = t_lu.solve(rho_exact);

  const std::vector<PauliLabel> zs(n, PauliLabel::Z);
  const RowVector m_exact = pauli_observable(zs).components;
  const Matrix m_hat = gst.gram * t_lu.inverse();
  Eigen::FullPivLU<Matrix> m_lu(m_hat.transpose());
  if (!m_lu.isInvertible()) throw SingularTomographyError("reconstructed observables are singular");
  const Vector q_m = m_lu.solve(m_exact.transpose());

  const double r_rho = max_abs(t * q_rho - rho_exact);
  const double r_m = max_abs(q_m.transpose() * m_hat - m_exact);
  return {QuasiprobDecomposition::from_coefficients(std::vector<double>(q_rho.begin(), q_rho.end()), r_rho),
          QuasiprobDecomposition::from_coefficients(std::vector<double>(q_m.begin(), q_m.end()), r_m)};
}

MeasurementScheme measurement_scheme(const QuasiprobDecomposition& d) {
  MeasurementScheme out;
  std::vector<double> coefficients;
  for (std::size_t j = 0; j < d.size(); ++j) {
    const double dj = d.coefficients[j];
    const double s = std::abs(dj) / d.cost;
    const double a = (s + dj) / 2.0;
    const double b = (s - dj) / 2.0;
    if (a != 0.0) {
      out.variants.push_back({static_cast<int>(j), false, a});
      coefficients.push_back(a);
    }
    if (b != 0.0) {
      out.variants.push_back({static_cast<int>(j), true, b});
      coefficients.push_back(b);
    }
  }
  out.sampler = QuasiprobDecomposition::from_coefficients(std::move(coefficients), d.residual);
  return out;
}

}  // namespace qmpec
