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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "qmpec/basis_set.hpp"
#include "qmpec/error.hpp"
#include "qmpec/gst.hpp"
#include "qmpec/inference.hpp"
#include "qmpec/linear_program.hpp"
#include "qmpec/noise.hpp"
#include "qmpec/quasiprob.hpp"
#include "qmpec/synthesis.hpp"

using namespace qmpec;

namespace {

Matrix diag4(double a, double b, double c, double d) {
  return Vector((Vector(4) << a, b, c, d).finished()).asDiagonal();
}

CMatrix pauli_x() {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

CMatrix hadamard() {
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Matrix vectorized(std::span<const PauliTransferMatrix> ops) {
  const Eigen::Index d = ops.front().dim();
  Matrix a(d * d, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k)
    a.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Vector>(ops[k].matrix.data(), d * d);
  return a;
}

// Minimum L1 norm over all basic solutions: every column subset of size
// rank(a) that is independent and reproduces b.
double brute_force_l1(const Matrix& a, const Vector& b) {
  const Eigen::Index n = a.cols();
  const Eigen::Index r = Eigen::ColPivHouseholderQR<Matrix>(a).rank();
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + r, true);
  double best = std::numeric_limits<double>::infinity();
  do {
    Matrix sub(a.rows(), r);
    for (Eigen::Index j = 0, k = 0; j < n; ++j)
      if (pick[static_cast<std::size_t>(j)]) sub.col(k++) = a.col(j);
    Eigen::ColPivHouseholderQR<Matrix> qr(sub);
    if (qr.rank() < r) continue;
    const Vector x = qr.solve(b);
    if ((sub * x - b).cwiseAbs().maxCoeff() > 1e-9) continue;
    best = std::min(best, x.lpNorm<1>());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

const BasisOperationSet& basis1() {
  static const BasisOperationSet b = build_basis_set(1);
  return b;
}

const BasisOperationSet& basis2() {
  static const BasisOperationSet b = build_basis_set(2);
  return b;
}

}  // namespace

TEST_CASE("basis operation sets") {
  REQUIRE(basis1().size() == 13);
  REQUIRE(basis2().size() == 241);
  for (const auto* set : {&basis1(), &basis2()}) {
    CHECK_NOTHROW(set->validate());
    for (const auto& op : set->operations) {
      const Eigen::Index d = op.kraus.front().rows();
      CMatrix completeness = CMatrix::Zero(d, d);
      for (const CMatrix& k : op.kraus) completeness += k.adjoint() * k;
      CHECK(max_abs(completeness - CMatrix::Identity(d, d)) < 1e-12);
      CHECK(max_abs(op.ideal.matrix - ptm_of_kraus(op.kraus).matrix) < 1e-12);
    }
  }
  // Trace-preserving PTMs span 13 dimensions for one qubit and 241 for two.
  const auto p1 = basis1().ideal_ptms();
  const auto p2 = basis2().ideal_ptms();
  CHECK(Eigen::ColPivHouseholderQR<Matrix>(vectorized(p1)).rank() == 13);
  CHECK(Eigen::FullPivLU<Matrix>(vectorized(p2)).rank() == 241);
}

TEST_CASE("noisy basis implementations") {
  NoiseModel none;
  for (const auto& op : basis2().operations)
    CHECK(max_abs(implement_noisy(op, 2, none).matrix - op.ideal.matrix) < 1e-12);
  NoiseModel noise;
  noise.q_dep = 0.02;
  const auto& x = basis1().operations[1];
  REQUIRE(x.label == "X");
  CHECK(max_abs(implement_noisy(x, 1, noise).matrix - diag4(1, 0.98, -0.98, -0.98)) < 1e-14);
  // Identity needs no gate and picks up no noise.
  CHECK(max_abs(implement_noisy(basis1().operations[0], 1, noise).matrix - Matrix::Identity(4, 4)) < 1e-15);
}

TEST_CASE("linear programs") {
  SUBCASE("small standard form") {
    // min -x0 - x1, x0 + 2 x1 + s0 = 4, 3 x0 + x1 + s1 = 6
    Matrix a(2, 4);
    a << 1, 2, 1, 0, 3, 1, 0, 1;
    const Vector b = (Vector(2) << 4, 6).finished();
    const Vector c = (Vector(4) << -1, -1, 0, 0).finished();
    const auto r = solve_standard_lp(a, b, c);
    CHECK(r.objective == doctest::Approx(-2.8));
    CHECK(r.x(0) == doctest::Approx(1.6));
    CHECK(r.x(1) == doctest::Approx(1.2));
  }
  SUBCASE("infeasible") {
    Matrix a(1, 2);
    a << 1, 1;
    CHECK_THROWS_AS(solve_standard_lp(a, (Vector(1) << -1).finished(), Vector::Zero(2)), NumericalError);
  }
  SUBCASE("L1 minimum matches basic-solution enumeration") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
      Matrix a(5, 9);
      for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
      Vector b(5);
      for (Eigen::Index i = 0; i < 5; ++i) b(i) = normal(rng);
      const auto sol = minimize_l1(a, b);
      CHECK_FALSE(sol.unique);
      CHECK(sol.residual < 1e-9);
      CHECK(sol.x.lpNorm<1>() == doctest::Approx(brute_force_l1(a, b)).epsilon(1e-9));
    }
  }
  SUBCASE("out of span") {
    Matrix a = Matrix::Zero(3, 2);
    a(0, 0) = a(1, 1) = 1;
    CHECK_THROWS_AS(minimize_l1(a, (Vector(3) << 0, 0, 1).finished()), SpanDeficiencyError);
  }
}

TEST_CASE("quasiprobability decompositions") {
  const auto ideal1 = basis1().ideal_ptms();
  SUBCASE("identity target") {
    const auto d = decompose_quasiprob(PauliTransferMatrix::identity(1), ideal1);
    CHECK(d.cost == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.coefficients[0] == doctest::Approx(1.0));
  }
  SUBCASE("inverse depolarizing") {
    const double f = 0.98;
    const PauliTransferMatrix target{1, diag4(1, 1 / f, 1 / f, 1 / f)};
    const auto d = decompose_quasiprob(target, ideal1);
    const double qi = (1 + 3 / f) / 4;
    const double qp = (1 - 1 / f) / 4;
    CHECK(d.coefficients[0] == doctest::Approx(qi).epsilon(1e-10));
    for (int k = 1; k <= 3; ++k) CHECK(d.coefficients[k] == doctest::Approx(qp).epsilon(1e-10));
    for (int k = 4; k < 13; ++k) CHECK(std::abs(d.coefficients[k]) < 1e-10);
    CHECK(d.cost == doctest::Approx((3 - f) / (2 * f)).epsilon(1e-12));
    CHECK(std::abs(d.cost - 1.0306) < 1e-4);
  }
  SUBCASE("overcomplete set agrees with enumeration") {
    auto ops = ideal1;
    ops.push_back({1, diag4(1, 0, 0, 0)});
    const PauliTransferMatrix target{1, diag4(1, 1 / 0.98, 1 / 0.98, 1 / 0.98)};
    const auto d = decompose_quasiprob(target, ops);
    const Matrix a = vectorized(ops);
    const Vector b = Eigen::Map<const Vector>(target.matrix.data(), 16);
    CHECK(d.cost == doctest::Approx(brute_force_l1(a, b)).epsilon(1e-9));
  }
  SUBCASE("reconstruction property") {
    NoiseModel noise;
    noise.q_dep = 0.03;
    noise.gamma_ad = 0.02;
    const PauliTransferMatrix target{1, noisy_unitary_ptm(hadamard(), std::vector<int>{0}, 1, noise).matrix.inverse()};
    const auto d = decompose_quasiprob(target, ideal1);
    Matrix sum = Matrix::Zero(4, 4);
    for (std::size_t k = 0; k < d.size(); ++k) sum += d.coefficients[k] * ideal1[k].matrix;
    CHECK(max_abs(sum - target.matrix) < 1e-8);
    double l1 = 0;
    for (double q : d.coefficients) l1 += std::abs(q);
    CHECK(d.cost == doctest::Approx(l1));
  }
  SUBCASE("span deficiency names the entry") {
    const std::vector<PauliTransferMatrix> only_identity = {PauliTransferMatrix::identity(1)};
    try {
      decompose_quasiprob(PauliTransferMatrix{1, diag4(1, 1, 1, 0.5)}, only_identity);
      FAIL("expected SpanDeficiencyError");
    } catch (const SpanDeficiencyError& e) {
      CHECK(std::string(e.what()).find("(3, 3)") != std::string::npos);
    }
  }
  SUBCASE("two-qubit identity") {
    const auto d = decompose_quasiprob(PauliTransferMatrix::identity(2), basis2().ideal_ptms());
    CHECK(d.cost == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("sampling from a decomposition") {
  const auto d = QuasiprobDecomposition::from_coefficients({0.7, -0.2, 0.0, 0.3});
  CHECK(d.cost == doctest::Approx(1.2));
  CHECK(d.cdf.back() == 1.0);
  CHECK(d.sign(1) == -1);
  for (double u : {0.0, 0.3, 0.5833, 0.5834, 0.75, 0.9999}) CHECK(d.index_for(u) != 2);
  std::mt19937_64 rng(1);
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 120000; ++i) ++counts[d.sample(rng)];
  CHECK(counts[2] == 0);
  CHECK(std::abs(counts[0] / 120000.0 - 0.7 / 1.2) < 0.005);
  CHECK(std::abs(counts[1] / 120000.0 - 0.2 / 1.2) < 0.005);
}

TEST_CASE("exact tomography on a noiseless device") {
  const NoisyDevice device(1, NoiseModel{});
  const std::vector<PauliTransferMatrix> ops = {PauliTransferMatrix::identity(1), ptm_of_unitary(pauli_x()),
                                                ptm_of_unitary(hadamard())};
  const auto gst = run_gst(device, ops, BasisOperationSet{1, {}}, std::nullopt, 0);
  CHECK(max_abs(gst.gram - transfer_matrix_t(1)) < 1e-15);
  for (std::size_t k = 0; k < ops.size(); ++k) CHECK(max_abs(hat_operator(gst, k).matrix - ops[k].matrix) < 1e-9);
  CHECK(max_abs(compute_hat(gst, gst.gram).matrix - Matrix::Identity(4, 4)) < 1e-12);

  const auto model = build_unitary(perturbed_coin_memory_states(0.2), 7);
  const std::vector<PauliTransferMatrix> two = {ptm_of_unitary(model.unitary.matrix())};
  const auto gst2 = run_gst(NoisyDevice(2, NoiseModel{}), two, basis2(), std::nullopt, 0);
  CHECK(max_abs(hat_operator(gst2, 0).matrix - two[0].matrix) < 1e-9);
  const auto hats = hat_basis(gst2);
  REQUIRE(hats.size() == 241);
  double worst = 0;
  for (std::size_t k = 0; k < hats.size(); ++k)
    worst = std::max(worst, max_abs(hats[k].matrix - basis2().operations[k].ideal.matrix));
  CHECK(worst < 1e-9);
  const auto d = decompose_quasiprob(PauliTransferMatrix::identity(2), hats);
  CHECK(d.cost == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("tomography under gate noise") {
  NoiseModel noise;
  noise.q_dep = 0.1;
  const NoisyDevice device(1, noise);
  const std::vector<PauliTransferMatrix> ops = {depolarizing_ptm(0.1, 1)};
  const auto gst = run_gst(device, ops, BasisOperationSet{1, {}}, std::nullopt, 0);
  CHECK(max_abs(hat_operator(gst, 0).matrix - diag4(1, 0.9, 0.9, 0.9)) < 1e-9);
}

TEST_CASE("shot noise in tomography") {
  NoiseModel noise;
  noise.q_dep = 0.02;
  noise.eps_meas = 0.02;
  const NoisyDevice device(1, noise);
  const std::vector<PauliTransferMatrix> ops = {device.implement(csd_decompose(UnitaryMatrix(pauli_x())))};
  const auto exact = run_gst(device, ops, BasisOperationSet{1, {}}, std::nullopt, 0);
  const auto shot = run_gst(device, ops, BasisOperationSet{1, {}}, 8192, 4);
  CHECK(max_abs(shot.gram - exact.gram) <= 5 / std::sqrt(8192.0));
  CHECK(max_abs(shot.operator_data[0] - exact.operator_data[0]) <= 5 / std::sqrt(8192.0));
  const auto again = run_gst(device, ops, BasisOperationSet{1, {}}, 8192, 4);
  CHECK(max_abs(shot.gram - again.gram) == 0.0);
}

TEST_CASE("singular tomography is rejected") {
  NoiseModel noise;
  noise.eps_meas = 0.5;
  const std::vector<PauliTransferMatrix> ops = {PauliTransferMatrix::identity(1)};
  CHECK_THROWS_AS(run_gst(NoisyDevice(1, noise), ops, BasisOperationSet{1, {}}, std::nullopt, 0),
                  SingularTomographyError);
}

TEST_CASE("inverse noise maps") {
  const auto x = ptm_of_unitary(pauli_x());
  CHECK(max_abs(inverse_noise(x, x).matrix - Matrix::Identity(4, 4)) < 1e-14);

  const PauliTransferMatrix depolarized{1, depolarizing_ptm(0.02, 1).matrix * x.matrix};
  CHECK(max_abs(inverse_noise(x, depolarized).matrix - diag4(1, 1 / 0.98, 1 / 0.98, 1 / 0.98)) < 1e-12);

  const double g = 0.05;
  const PauliTransferMatrix damped{1, amplitude_damping_ptm(g).matrix};
  Matrix oracle = diag4(1, 1 / std::sqrt(1 - g), 1 / std::sqrt(1 - g), 1 / (1 - g));
  oracle(3, 0) = -g / (1 - g);
  CHECK(max_abs(inverse_noise(PauliTransferMatrix::identity(1), damped).matrix - oracle) < 1e-12);

  std::vector<std::string> warnings;
  inverse_noise(PauliTransferMatrix::identity(1), PauliTransferMatrix{1, diag4(1, 0.3, 0.3, 0.3)}, &warnings);
  CHECK(warnings.size() == 1);
}

TEST_CASE("state and measurement decompositions") {
  const std::vector<PauliTransferMatrix> none;
  SUBCASE("noiseless") {
    const auto gst = run_gst(NoisyDevice(1, NoiseModel{}), none, BasisOperationSet{1, {}}, std::nullopt, 0);
    const auto sm = decompose_state_measurement(gst);
    CHECK(sm.rho.cost == doctest::Approx(1.0));
    CHECK(sm.rho.coefficients[0] == doctest::Approx(1.0));
    CHECK(sm.measurement.cost == doctest::Approx(1.0));
    CHECK(sm.measurement.coefficients[3] == doctest::Approx(1.0));
  }
  SUBCASE("preparation flips") {
    NoiseModel noise;
    noise.eps_prep = 0.02;
    const auto gst = run_gst(NoisyDevice(1, noise), none, BasisOperationSet{1, {}}, std::nullopt, 0);
    const auto sm = decompose_state_measurement(gst);
    const Vector q = Eigen::Map<const Vector>(sm.rho.coefficients.data(), 4);
    CHECK(max_abs(transfer_matrix_t(1) * q - transfer_matrix_t(1).col(0)) < 1e-8);
    // Tomography cannot separate preparation from readout error; with T held
    // fixed the flip is carried by the measurement decomposition.
    CHECK(sm.rho.cost == doctest::Approx(1.0));
    CHECK(sm.measurement.cost == doctest::Approx(1.0 / 0.96));
  }
  SUBCASE("readout flips") {
    NoiseModel noise;
    noise.eps_meas = 0.02;
    const auto gst = run_gst(NoisyDevice(2, noise), none, BasisOperationSet{2, {}}, std::nullopt, 0);
    const auto sm = decompose_state_measurement(gst);
    CHECK(sm.measurement.cost == doctest::Approx(1.0 / (0.96 * 0.96)));
  }
}

TEST_CASE("measurement scheme is unbiased for both outcomes") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto d = QuasiprobDecomposition::from_coefficients({0.1, -0.3, 0.05, 1.2});
  const auto scheme = measurement_scheme(d);
  CHECK(scheme.sampler.cost == doctest::Approx(d.cost));
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> e(4);
    for (double& v : e) v = u(rng);
    double target = 0.0;
    for (std::size_t j = 0; j < 4; ++j) target += d.coefficients[j] * e[j];
    double p0 = 0.0;
    for (const auto& v : scheme.variants) {
      const double s = v.flipped ? -1.0 : 1.0;
      p0 += v.coefficient * (1 + s * e[static_cast<std::size_t>(v.observable)]) / 2;
    }
    CHECK(p0 == doctest::Approx((1 + target) / 2).epsilon(1e-12));
  }
}
