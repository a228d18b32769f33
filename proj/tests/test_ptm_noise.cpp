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

#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "qmpec/error.hpp"
#include "qmpec/noise.hpp"
#include "qmpec/ptm.hpp"
#include "qmpec/synthesis.hpp"

using namespace qmpec;

namespace {

const Complex I1(0, 1);

std::array<CMatrix, 4> paulis() {
  CMatrix id = CMatrix::Identity(2, 2);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -I1, I1, 0;
  z << 1, 0, 0, -1;
  return {id, x, y, z};
}

// tr(s_i U s_j U^dag) / 2 evaluated entry by entry.
Matrix ptm_oracle(const CMatrix& u) {
  const auto s = paulis();
  Matrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = (s[i] * u * s[j] * u.adjoint()).trace().real() / 2.0;
  return out;
}

CMatrix hadamard() {
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

}  // namespace

TEST_CASE("unitary PTMs") {
  CHECK(max_abs(ptm_of_unitary(CMatrix::Identity(2, 2)).matrix - Matrix::Identity(4, 4)) < 1e-15);
  const auto s = paulis();
  Matrix x_expected = Vector((Vector(4) << 1, 1, -1, -1).finished()).asDiagonal();
  CHECK(max_abs(ptm_of_unitary(s[1]).matrix - x_expected) < 1e-15);
  Matrix h_expected(4, 4);
  h_expected << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 1, 0, 0;
  CHECK(max_abs(ptm_of_unitary(hadamard()).matrix - h_expected) < 1e-15);

  std::mt19937_64 rng(8);
  for (int k = 0; k < 10; ++k) {
    const CMatrix u = random_unitary(2, rng);
    const Matrix m = ptm_of_unitary(u).matrix;
    CHECK(max_abs(m - ptm_oracle(u)) < 1e-13);
    CHECK(max_abs(m.transpose() * m - Matrix::Identity(4, 4)) < 1e-12);
  }
}

TEST_CASE("two-qubit PTMs compose as tensor products") {
  std::mt19937_64 rng(9);
  const CMatrix a = random_unitary(2, rng);
  const CMatrix b = random_unitary(2, rng);
  const Matrix joint = ptm_of_unitary(kron(a, b)).matrix;
  CHECK(max_abs(joint - kron(ptm_of_unitary(a).matrix, ptm_of_unitary(b).matrix)) < 1e-13);

  const std::vector<int> on_second = {1};
  const auto lifted = embed_ptm(ptm_of_unitary(b), on_second, 2);
  CHECK(max_abs(lifted.matrix - ptm_of_unitary(kron(CMatrix::Identity(2, 2), b)).matrix) < 1e-13);

  const CMatrix u = random_unitary(4, rng);
  const std::vector<int> swapped = {1, 0};
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
  CHECK(max_abs(embed_unitary(u, swapped, 2) - swap * u * swap) < 1e-14);
  CHECK(max_abs(embed_ptm(ptm_of_unitary(u), swapped, 2).matrix - ptm_of_unitary(swap * u * swap).matrix) < 1e-13);
}

TEST_CASE("noise channel PTMs") {
  const double q = 0.07;
  CHECK(max_abs(depolarizing_ptm(q, 1).matrix - Matrix(Vector((Vector(4) << 1, 1 - q, 1 - q, 1 - q).finished()).asDiagonal())) <
        1e-15);
  CHECK(max_abs(depolarizing_ptm(0.0, 2).matrix - Matrix::Identity(16, 16)) == 0.0);

  const double g = 0.05;
  const Matrix ad = amplitude_damping_ptm(g).matrix;
  CHECK(ad(3, 0) == doctest::Approx(g));
  CHECK(ad(1, 1) == doctest::Approx(std::sqrt(1 - g)));
  CHECK(ad(2, 2) == doctest::Approx(std::sqrt(1 - g)));
  CHECK(ad(3, 3) == doctest::Approx(1 - g));
  CHECK(max_abs(ad - ptm_of_kraus(amplitude_damping_kraus(g)).matrix) < 1e-15);
  CHECK(max_abs(dephasing_ptm(q).matrix - ptm_of_kraus(dephasing_kraus(q)).matrix) < 1e-15);
  CHECK(amplitude_damping_ptm(g).trace_preserving());
  CHECK_THROWS_AS(depolarizing_ptm(1.5, 1), ValidationError);
}

TEST_CASE("state PTMs and the transfer matrix") {
  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1;
  const Vector r0 = ptm_of_density(zero).components;
  CHECK(max_abs(r0 - (Vector(4) << 1, 0, 0, 1).finished()) < 1e-15);
  CMatrix plus = CMatrix::Constant(2, 2, 0.5);
  const Vector rp = ptm_of_density(plus).components;
  CHECK(max_abs(rp - (Vector(4) << 1, 1, 0, 0).finished()) < 1e-15);

  const Matrix t = transfer_matrix_t(1);
  CHECK(max_abs(t.col(0) - r0) < 1e-15);
  CHECK(max_abs(t.col(2) - rp) < 1e-15);

  const std::array<PrepLabel, 2> zp = {PrepLabel::Zero, PrepLabel::Plus};
  CHECK(max_abs(prep_state_ptm(zp).components - kron(Matrix(r0), Matrix(rp))) < 1e-15);
  CHECK(max_abs(transfer_matrix_t(2) - kron(t, t)) < 1e-15);
}

TEST_CASE("noisy gates on states") {
  const std::array<PrepLabel, 1> zero = {PrepLabel::Zero};
  SUBCASE("noiseless action is the unitary") {
    std::mt19937_64 rng(3);
    const auto a = zyz_decompose(random_unitary(2, rng));
    const Gate g = SingleZYZ{0, a.gamma, a.phi, a.theta, a.lambda};
    const auto out = apply_noisy_gate(prep_state_ptm(zero), g, NoiseModel{});
    const Vector expected = ptm_of_unitary(gate_matrix(g, 1)).matrix * prep_state_ptm(zero).components;
    CHECK(max_abs(out.components - expected) < 1e-14);
  }
  SUBCASE("depolarized identity shrinks the Bloch vector") {
    NoiseModel noise;
    noise.q_dep = 0.1;
    const std::array<PrepLabel, 1> plus = {PrepLabel::Plus};
    const auto out = apply_noisy_gate(prep_state_ptm(plus), SingleZYZ{0, 0, 0, 0, 0}, noise);
    CHECK(out.components(1) == doctest::Approx(0.9));
  }
  SUBCASE("depolarized X") {
    NoiseModel noise;
    noise.q_dep = 0.02;
    const auto out = apply_noisy_gate(prep_state_ptm(zero), NotGate{0}, noise);
    CHECK(out.components(3) == doctest::Approx(-0.98).epsilon(1e-14));
  }
}

TEST_CASE("measurement distributions") {
  const std::array<PrepLabel, 1> zero = {PrepLabel::Zero};
  const std::array<PrepLabel, 1> plus = {PrepLabel::Plus};
  auto p0 = measure_distribution(prep_state_ptm(zero), NoiseModel{});
  CHECK(p0[0] == doctest::Approx(1.0));
  auto pp = measure_distribution(prep_state_ptm(plus), NoiseModel{});
  CHECK(pp[0] == doctest::Approx(0.5));
  CHECK(pp[1] == doctest::Approx(0.5));
  NoiseModel readout;
  readout.eps_meas = 0.03;
  CHECK(measure_distribution(prep_state_ptm(zero), readout)[1] == doctest::Approx(0.03));

  // Two qubits |1>|+> with readout flips: outcome bits are independent.
  const std::array<PrepLabel, 2> one_plus = {PrepLabel::One, PrepLabel::Plus};
  auto two = measure_distribution(prep_state_ptm(one_plus), readout);
  CHECK(two[0b10] == doctest::Approx(0.97 * 0.5));
  CHECK(two[0b00] == doctest::Approx(0.03 * 0.5));
  const std::vector<int> only_second = {1};
  auto marginal = measure_distribution(prep_state_ptm(one_plus), only_second, NoiseModel{});
  CHECK(marginal[0] == doctest::Approx(0.5));
}

TEST_CASE("noisy preparation and observables") {
  NoiseModel noise;
  noise.eps_prep = 0.02;
  noise.eps_meas = 0.05;
  const std::array<PrepLabel, 1> zero = {PrepLabel::Zero};
  const std::array<PauliLabel, 1> z = {PauliLabel::Z};
  CHECK(noisy_prep(zero, noise).components(3) == doctest::Approx(0.96));
  const auto m = noisy_pauli_observable(z, noise);
  CHECK(m.expectation(prep_state_ptm(zero)) == doctest::Approx(0.9));
}

TEST_CASE("outcome sampling") {
  std::mt19937_64 rng(77);
  const std::vector<double> certain = {1.0, 0.0};
  for (int i = 0; i < 100; ++i) CHECK(sample_outcome(certain, rng) == 0);
  const std::vector<double> fair = {0.5, 0.5};
  int ones = 0;
  for (int i = 0; i < 100000; ++i) ones += sample_outcome(fair, rng);
  CHECK(std::abs(ones / 1e5 - 0.5) < 0.005);

  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 50; ++i) CHECK(sample_outcome(fair, a) == sample_outcome(fair, b));
}

TEST_CASE("noise model validation") {
  NoiseModel noise;
  CHECK(noise.noiseless());
  noise.eps_meas = 1.2;
  CHECK_THROWS_AS(noise.validate(), ValidationError);
}
