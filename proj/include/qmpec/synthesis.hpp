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

#ifndef QMPEC_SYNTHESIS_HPP
#define QMPEC_SYNTHESIS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "qmpec/circuit.hpp"
#include "qmpec/inference.hpp"
#include "qmpec/linalg.hpp"

namespace qmpec {

inline constexpr double kUnitaryTolerance = 1e-9;

class UnitaryMatrix {
 public:
  // Throws NumericalError when ||U^dag U - I||_max exceeds tolerance.
  explicit UnitaryMatrix(CMatrix m, double tolerance = kUnitaryTolerance);

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  int num_qubits() const { return ceil_log2(m_.rows()); }

 private:
  CMatrix m_;
};

double unitarity_defect(const CMatrix& m);

CMatrix random_unitary(int dim, std::mt19937_64& rng);

// gamma(i, k): e_i = sum_k gamma(i, k) sigma_k. Lower triangular.
struct GramSchmidtBasis {
  Matrix gamma;
};

struct ModelUnitary {
  UnitaryMatrix unitary;
  GramSchmidtBasis basis;
  Matrix memory_states;        // column i: state i in the e-basis, zero padded
  int memory_qubits = 0;
  int ancilla_qubits = 0;
  double fixed_column_defect = 0.0;  // max |F^dag F - I| before re-orthonormalising
};

// Columns U_{(i x),(i' 0)} follow the memory-state transitions; the remaining
// columns are seeded random vectors orthonormalised against them.
ModelUnitary build_unitary(const MemoryStateSet& set, std::uint64_t seed);

// The model unitary on whole qubit registers: memory index i and symbol x map
// to i * 2^ancilla_qubits + x, and unused symbol slots are left untouched.
UnitaryMatrix register_unitary(const ModelUnitary& model, int alphabet_size);

// U (memory (x) |0>).
CVector apply_model_step(const UnitaryMatrix& u, const CVector& memory, int alphabet_size);

// Probability of each ancilla symbol in a joint state with the ancilla last.
std::vector<double> ancilla_distribution(const CVector& joint, int alphabet_size);

// Exact joint distribution of t emitted symbols, ancilla measured each step.
std::vector<double> model_word_distribution(const UnitaryMatrix& u, const CVector& memory,
                                            int alphabet_size, int steps);

// Joint word of t symbols sampled with measurement and collapse per step.
WordCode sample_model_word(const UnitaryMatrix& u, const CVector& memory, int alphabet_size, int steps,
                           std::mt19937_64& rng);

struct ZyzAngles {
  double gamma = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double lambda = 0.0;
};

ZyzAngles zyz_decompose(const CMatrix& u);

// U = diag(u1, u2) [[C, -S], [S, C]] diag(v1, v2).
struct CosineSine {
  CMatrix u1, u2, v1, v2;
  Vector theta;
};

CosineSine cosine_sine(const CMatrix& u);

GateCircuit csd_decompose(const UnitaryMatrix& u);

UnitaryMatrix reconstruct(const GateCircuit& circuit);

long circuit_depth_formula(int num_qubits, int steps);

}  // namespace qmpec

#endif  // QMPEC_SYNTHESIS_HPP
