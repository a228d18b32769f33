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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qmpec/error.hpp"
#include "qmpec/inference.hpp"
#include "qmpec/synthesis.hpp"

using namespace qmpec;

namespace {

double markov_word_probability(double p, int start_state, WordCode word, int steps) {
  double prob = 1.0;
  int state = start_state;
  for (int x : word_symbols(word, 2, steps)) {
    prob *= x == state ? p : 1.0 - p;
    state = x;
  }
  return prob;
}

CVector memory_vector(const ModelUnitary& model, int index) {
  return model.memory_states.col(index).cast<Complex>();
}

double angle_mod_2pi(double a) {
  const double r = std::remainder(a, 2 * std::numbers::pi);
  return std::abs(r);
}

}  // namespace

TEST_CASE("unitary matrix contract") {
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 0) = 1.1;
  CHECK_THROWS_AS(UnitaryMatrix{bad}, NumericalError);
  std::mt19937_64 rng(5);
  CHECK(unitarity_defect(random_unitary(8, rng)) < 1e-12);
}

TEST_CASE("model unitary for the p=0.2 coin") {
  const auto set = perturbed_coin_memory_states(0.2);
  const auto model = build_unitary(set, 7);
  REQUIRE(model.memory_qubits == 1);
  REQUIRE(model.ancilla_qubits == 1);
  CHECK(unitarity_defect(model.unitary.matrix()) <= 1e-9);

  // Gram-Schmidt coordinates of the second state, then the transition column.
  const double overlap = set.states[0].dot(set.states[1]);
  const double s1_e1 = overlap;
  const double s1_e2 = std::sqrt(1 - overlap * overlap);
  const double oracle[4] = {std::sqrt(0.2), std::sqrt(0.8) * s1_e1, 0.0, std::sqrt(0.8) * s1_e2};
  const double rounded[4] = {0.4472, 0.7155, 0.0, 0.5367};
  for (int r = 0; r < 4; ++r) {
    CHECK(std::abs(model.unitary.matrix()(r, 0) - oracle[r]) < 1e-12);
    CHECK(std::abs(model.unitary.matrix()(r, 0).real() - rounded[r]) < 1e-3);
  }

  const Matrix gram = model.memory_states.transpose() * model.memory_states;
  CHECK(max_abs(gram - set.gram()) <= 1e-9);
}

TEST_CASE("period-two model is a permutation on its fixed columns") {
  std::vector<double> joint = {0, 0.5, 0.5, 0};
  const auto set = infer_memory_states(ConditionalDistribution(2, 1, joint), 1);
  const auto model = build_unitary(set, 1);
  for (int col : {0, 2}) {
    int ones = 0;
    for (int r = 0; r < 4; ++r) {
      const double a = std::abs(model.unitary.matrix()(r, col));
      CHECK((a < 1e-12 || std::abs(a - 1) < 1e-12));
      ones += a > 0.5;
    }
    CHECK(ones == 1);
  }
}

TEST_CASE("emission statistics follow the chain") {
  const double p = 0.2;
  const auto model = build_unitary(perturbed_coin_memory_states(p), 3);
  const CVector s0 = memory_vector(model, 0);

  const auto one = ancilla_distribution(apply_model_step(model.unitary, s0, 2), 2);
  CHECK(one[1] == doctest::Approx(0.8).epsilon(1e-12));

  for (int steps = 1; steps <= 4; ++steps) {
    const auto dist = model_word_distribution(model.unitary, s0, 2, steps);
    for (WordCode w = 0; w < dist.size(); ++w)
      CHECK(dist[w] == doctest::Approx(markov_word_probability(p, 0, w, steps)).epsilon(1e-12));
  }

  SUBCASE("deterministic coin") {
    const auto det = build_unitary(perturbed_coin_memory_states(1.0), 3);
    const auto d = ancilla_distribution(apply_model_step(det.unitary, memory_vector(det, 1), 2), 2);
    CHECK(d[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("sampled three-step words stay within binomial bounds") {
  const double p = 0.2;
  const auto model = build_unitary(perturbed_coin_memory_states(p), 3);
  const CVector s0 = memory_vector(model, 0);
  std::mt19937_64 rng(12);
  const int shots = 100000;
  std::vector<int> counts(8, 0);
  for (int s = 0; s < shots; ++s) ++counts[sample_model_word(model.unitary, s0, 2, 3, rng)];
  for (WordCode w = 0; w < 8; ++w) {
    const double q = markov_word_probability(p, 0, w, 3);
    const double sigma = std::sqrt(q * (1 - q) / shots);
    CHECK(std::abs(counts[w] / double(shots) - q) <= 3 * sigma + 1e-12);
  }
}

TEST_CASE("register padding for a three-letter alphabet") {
  std::vector<double> joint = {0.5, 0.3, 0.2, 0.2, 0.5, 0.3, 0.3, 0.2, 0.5};
  for (double& w : joint) w /= 3.0;
  const auto set = infer_memory_states(ConditionalDistribution(3, 1, joint), 1);
  const auto model = build_unitary(set, 2);
  REQUIRE(model.ancilla_qubits == 2);
  const auto reg = register_unitary(model, 3);
  CHECK(reg.dim() == (1 << (model.memory_qubits + model.ancilla_qubits)));
  CHECK(unitarity_defect(reg.matrix()) < 1e-12);
  // Input |mem=0, x=0>: the emitted symbol never lands in the padding slot x=3.
  const CVector col = reg.matrix().col(0);
  double padding = 0.0;
  for (Eigen::Index r = 0; r < col.size(); ++r)
    if (r % 4 == 3) padding += std::norm(col(r));
  CHECK(col.norm() == doctest::Approx(1.0));
  CHECK(padding < 1e-20);
  const auto dist = ancilla_distribution(apply_model_step(reg, memory_vector(model, 0).cast<Complex>(), 4), 4);
  CHECK(dist[0] == doctest::Approx(0.5));
  CHECK(dist[1] == doctest::Approx(0.3));
  CHECK(dist[2] == doctest::Approx(0.2));
}

TEST_CASE("ZYZ decomposition") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 50; ++k) {
    const CMatrix u = random_unitary(2, rng);
    const auto a = zyz_decompose(u);
    CHECK(max_abs(zyz_matrix(a.gamma, a.phi, a.theta, a.lambda) - u) < 1e-12);
  }
  const CMatrix x = (CMatrix(2, 2) << 0, 1, 1, 0).finished();
  const auto ax = zyz_decompose(x);
  CHECK(max_abs(zyz_matrix(ax.gamma, ax.phi, ax.theta, ax.lambda) - x) < 1e-12);
}

TEST_CASE("cosine-sine factors") {
  std::mt19937_64 rng(4);
  const CMatrix u = random_unitary(8, rng);
  const auto cs = cosine_sine(u);
  const Eigen::Index h = 4;
  CMatrix left = CMatrix::Zero(8, 8), mid(8, 8), right = CMatrix::Zero(8, 8);
  left.topLeftCorner(h, h) = cs.u1;
  left.bottomRightCorner(h, h) = cs.u2;
  right.topLeftCorner(h, h) = cs.v1;
  right.bottomRightCorner(h, h) = cs.v2;
  const CMatrix c = cs.theta.array().cos().matrix().cast<Complex>().asDiagonal();
  const CMatrix s = cs.theta.array().sin().matrix().cast<Complex>().asDiagonal();
  mid << c, -s, s, c;
  CHECK(max_abs(left * mid * right - u) < 1e-10);
}

TEST_CASE("CSD roundtrip") {
  std::mt19937_64 rng(2024);
  SUBCASE("identity has trivial angles") {
    const auto circuit = csd_decompose(UnitaryMatrix(CMatrix::Identity(4, 4)));
    for (const auto& g : circuit.gates)
      for (double a : gate_angles(g)) CHECK(angle_mod_2pi(a) < 1e-10);
    CHECK(max_abs_diff_up_to_phase(reconstruct(circuit).matrix(), CMatrix::Identity(4, 4)) < 1e-12);
  }
  SUBCASE("random 4x4") {
    for (int k = 0; k < 100; ++k) {
      const UnitaryMatrix u(random_unitary(4, rng));
      CHECK(max_abs_diff_up_to_phase(reconstruct(csd_decompose(u)).matrix(), u.matrix()) <= 1e-10);
    }
  }
  SUBCASE("random 8x8") {
    for (int k = 0; k < 20; ++k) {
      const UnitaryMatrix u(random_unitary(8, rng));
      CHECK(max_abs_diff_up_to_phase(reconstruct(csd_decompose(u)).matrix(), u.matrix()) <= 1e-9);
    }
  }
  SUBCASE("single qubit") {
    const UnitaryMatrix u(random_unitary(2, rng));
    const auto circuit = csd_decompose(u);
    CHECK(circuit.num_qubits == 1);
    CHECK(max_abs_diff_up_to_phase(reconstruct(circuit).matrix(), u.matrix()) <= 1e-12);
  }
  SUBCASE("non power of two is rejected") {
    CHECK_THROWS_AS(csd_decompose(UnitaryMatrix(CMatrix::Identity(3, 3))), ValidationError);
  }
}

TEST_CASE("reconstruct") {
  GateCircuit empty;
  empty.num_qubits = 2;
  CHECK(max_abs(reconstruct(empty).matrix() - CMatrix::Identity(4, 4)) == 0.0);

  GateCircuit one;
  one.num_qubits = 1;
  one.gates.push_back(SingleZYZ{0, 0.3, 0.7, -1.1, 2.0});
  const CMatrix expected = std::exp(Complex(0, 0.3)) * rz_matrix(0.7) * ry_matrix(-1.1) * rz_matrix(2.0);
  CHECK(max_abs(reconstruct(one).matrix() - expected) < 1e-14);
}

TEST_CASE("depth formula") {
  CHECK(circuit_depth_formula(2, 1) == 33);
  CHECK(circuit_depth_formula(2, 3) == 99);
  CHECK(circuit_depth_formula(3, 1) == 137);
  CHECK(csd_decompose(UnitaryMatrix(CMatrix::Identity(4, 4))).depth_reported() == 33);
  CHECK(csd_decompose(UnitaryMatrix(CMatrix::Identity(8, 8))).depth_reported() == 137);
}
