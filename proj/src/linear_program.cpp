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

#include "qmpec/linear_program.hpp"

#include <limits>
#include <sstream>
#include <vector>

#include "qmpec/error.hpp"

namespace qmpec {

namespace {

constexpr double kPivotTolerance = 1e-11;

class Tableau {
 public:
  // Rows 0..m-1 hold constraints, the last row holds reduced costs; the last
  // column holds the right-hand side.
  Tableau(Matrix body, std::vector<int> basis) : t_(std::move(body)), basis_(std::move(basis)) {}

  Matrix& data() { return t_; }
  const std::vector<int>& basis() const { return basis_; }
  int pivots() const { return pivots_; }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      if (r == row) continue;
      const double f = t_(r, col);
      if (f != 0.0) t_.row(r) -= f * t_.row(row);
    }
    basis_[row] = col;
    ++pivots_;
  }

  // Minimises over columns [0, active); returns false when unbounded.
  bool optimise(int active) {
    const int m = static_cast<int>(t_.rows()) - 1;
    const int rhs = static_cast<int>(t_.cols()) - 1;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < active; ++j) {
        if (t_(m, j) < -kPivotTolerance) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        if (t_(r, enter) <= kPivotTolerance) continue;
        const double ratio = t_(r, rhs) / t_(r, enter);
        if (ratio < best - 1e-14 || (ratio <= best + 1e-14 && leave >= 0 && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

 private:
  Matrix t_;
  std::vector<int> basis_;
  int pivots_ = 0;
};

}  // namespace

LinearProgramResult solve_standard_lp(const Matrix& a, const Vector& b, const Vector& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (b.size() != m || c.size() != n) throw ValidationError("linear program dimensions disagree");

  // Phase one: artificial columns n..n+m-1 with unit cost.
  Matrix body = Matrix::Zero(m + 1, n + m + 1);
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    const double sign = b(r) < 0.0 ? -1.0 : 1.0;
    body.row(r).head(n) = sign * a.row(r);
    body(r, n + r) = 1.0;
    body(r, n + m) = sign * b(r);
    basis[r] = n + r;
  }
  for (int r = 0; r < m; ++r) body.row(m) -= body.row(r);
  for (int r = 0; r < m; ++r) body(m, n + r) = 0.0;
  Tableau tab(std::move(body), std::move(basis));
  tab.optimise(n + m);
  const double scale = std::max(1.0, max_abs(b));
  if (-tab.data()(m, n + m) > 1e-9 * scale) throw NumericalError("linear program is infeasible");

  // Drive degenerate artificials out of the basis.
  for (int r = 0; r < m; ++r) {
    if (tab.basis()[r] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.data()(r, j)) > 1e-9) {
        tab.pivot(r, j);
        break;
      }
    }
  }

  // Phase two: real costs, artificial columns frozen out.
  Matrix& t = tab.data();
  t.row(m).setZero();
  t.row(m).head(n) = c.transpose();
  for (int r = 0; r < m; ++r) {
    const int j = tab.basis()[r];
    if (j < n && c(j) != 0.0) t.row(m) -= c(j) * t.row(r);
  }
  if (!tab.optimise(n)) throw NumericalError("linear program is unbounded");

  // Recompute the basic values from the original data to shed pivot drift.
  std::vector<int> cols;
  for (int r = 0; r < m; ++r)
    if (tab.basis()[r] < n) cols.push_back(tab.basis()[r]);
  Matrix ab(m, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) ab.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
  const Vector xb = ab.colPivHouseholderQr().solve(b);
  LinearProgramResult out;
  out.x = Vector::Zero(n);
  for (std::size_t k = 0; k < cols.size(); ++k) out.x(cols[k]) = std::max(0.0, xb(static_cast<Eigen::Index>(k)));
  out.objective = c.dot(out.x);
  out.pivots = tab.pivots();
  return out;
}

L1Solution minimize_l1(const Matrix& a, const Vector& b, double tolerance) {
  if (a.rows() != b.size()) throw ValidationError("system dimensions disagree");
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  cod.setThreshold(1e-10);
  const Vector x0 = cod.solve(b);
  const Vector r0 = a * x0 - b;
  Eigen::Index worst = 0;
  const double residual = r0.size() ? r0.cwiseAbs().maxCoeff(&worst) : 0.0;
  if (residual > tolerance) {
    std::ostringstream msg;
    msg << "target not in the span of the basis: residual " << residual << " at entry " << worst;
    throw SpanDeficiencyError(msg.str());
  }
  const Eigen::Index rank = cod.rank();
  if (rank == a.cols()) return {x0, residual, true};

  // Independent equality rows: project onto an orthonormal basis of range(a).
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  qr.setThreshold(1e-10);
  const Matrix q = Matrix(qr.householderQ()).leftCols(rank);
  const Matrix ar = q.transpose() * a;
  const Vector br = q.transpose() * b;
  const Eigen::Index n = a.cols();
  Matrix split(rank, 2 * n);
  split << ar, -ar;
  const LinearProgramResult lp = solve_standard_lp(split, br, Vector::Ones(2 * n));
  L1Solution out;
  out.x = lp.x.head(n) - lp.x.tail(n);
  out.residual = max_abs(a * out.x - b);
  out.unique = false;
  if (out.residual > tolerance) {
    std::ostringstream msg;
    msg << "L1 solve lost accuracy: residual " << out.residual;
    throw NumericalError(msg.str());
  }
  return out;
}

}  // namespace qmpec
