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

#include "qmpec/synthesis.hpp"

#include <cmath>
#include <sstream>

#include "qmpec/error.hpp"

namespace qmpec {

double unitarity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(CMatrix(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())));
}

UnitaryMatrix::UnitaryMatrix(CMatrix m, double tolerance) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw ValidationError("unitary must be a non-empty square matrix");
  double defect = unitarity_defect(m_);
  if (!(defect <= tolerance)) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max |U^dag U - I| = " << defect;
    throw NumericalError(msg.str());
  }
}

CMatrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

namespace {

CVector random_complex_vector(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

// Projects v off the listed columns of u, twice; returns the residual norm.
double orthogonalize(CVector& v, const CMatrix& u, const std::vector<Eigen::Index>& against) {
  for (int pass = 0; pass < 2; ++pass)
    for (Eigen::Index c : against) v -= u.col(c).dot(v) * u.col(c);
  return v.norm();
}

}  // namespace

ModelUnitary build_unitary(const MemoryStateSet& set, std::uint64_t seed) {
  set.validate();
  const auto m = static_cast<Eigen::Index>(set.size());
  const int a = set.alphabet_size;
  const Matrix gram = set.gram();

  Eigen::LLT<Matrix> llt(gram);
  Matrix lower = llt.matrixL();
  Eigen::Index bad = -1;
  if (llt.info() != Eigen::Success) bad = 0;
  for (Eigen::Index i = 0; i < m && bad < 0; ++i)
    if (!(lower(i, i) > 1e-7)) bad = i;
  if (bad >= 0) {
    Eigen::Index bi = 0, bj = 1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i + 1; j < m; ++j)
        if (std::abs(gram(i, j)) > best) best = std::abs(gram(i, j)), bi = i, bj = j;
    std::ostringstream msg;
    msg << "memory-state Gram matrix is numerically rank deficient; reduce the dimension";
    if (m > 1) msg << " by merging states " << set.labels[bi] << " and " << set.labels[bj] << " (overlap " << best << ")";
    throw NumericalError(msg.str());
  }

  // sigma_k in the e-basis is column k of R = L^T; e_i = sum_k (R^{-1})_{k,i} sigma_k.
  const Matrix r = lower.transpose();
  const Matrix gamma = lower.triangularView<Eigen::Lower>().solve(Matrix::Identity(m, m));

  const int mem_qubits = ceil_log2(m);
  const Eigen::Index d = Eigen::Index{1} << mem_qubits;
  const Eigen::Index dim = d * a;
  Matrix mem = Matrix::Zero(d, m);
  mem.topRows(m) = r;

  CMatrix u = CMatrix::Zero(dim, dim);
  for (Eigen::Index ip = 0; ip < m; ++ip) {
    CVector col = CVector::Zero(dim);
    for (Eigen::Index k = 0; k < m; ++k) {
      if (gamma(ip, k) == 0.0) continue;
      for (int x = 0; x < a; ++x) {
        const double px = set.emission[k][x];
        if (px <= 0.0) continue;
        const int next = set.successor[k][x];
        if (next < 0)
          throw ValidationError("state " + set.labels[k] + " emits symbol " + std::to_string(x) +
                                " with no successor state");
        for (Eigen::Index i = 0; i < d; ++i) col(i * a + x) += gamma(ip, k) * std::sqrt(px) * mem(i, next);
      }
    }
    u.col(ip * a) = col;
  }

  std::vector<Eigen::Index> fixed;
  for (Eigen::Index ip = 0; ip < m; ++ip) fixed.push_back(ip * a);
  double defect = 0.0;
  for (std::size_t i = 0; i < fixed.size(); ++i)
    for (std::size_t j = 0; j < fixed.size(); ++j)
      defect = std::max(defect, std::abs(u.col(fixed[i]).dot(u.col(fixed[j])) - (i == j ? 1.0 : 0.0)));
  if (defect > 1e-12) {
    std::vector<Eigen::Index> done;
    for (Eigen::Index c : fixed) {
      CVector v = u.col(c);
      double norm = orthogonalize(v, u, done);
      if (norm < 1e-8) throw NumericalError("model columns are linearly dependent; merge more states");
      u.col(c) = v / norm;
      done.push_back(c);
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<Eigen::Index> filled = fixed;
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c % a == 0 && c / a < m) continue;
    for (;;) {
      CVector v = random_complex_vector(dim, rng);
      double norm = orthogonalize(v, u, filled);
      if (norm > 1e-6) {
        u.col(c) = v / norm;
        break;
      }
    }
    filled.push_back(c);
  }

  return ModelUnitary{UnitaryMatrix(u), GramSchmidtBasis{gamma}, mem, mem_qubits, ceil_log2(a), defect};
}

UnitaryMatrix register_unitary(const ModelUnitary& model, int alphabet_size) {
  const Eigen::Index a = alphabet_size;
  const Eigen::Index width = Eigen::Index{1} << model.ancilla_qubits;
  const CMatrix& u = model.unitary.matrix();
  if (a < 1 || u.rows() % a != 0 || width < a) throw ValidationError("alphabet size does not match the model");
  if (width == a) return model.unitary;
  const Eigen::Index d = u.rows() / a;
  CMatrix out = CMatrix::Identity(d * width, d * width);
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    out.col((c / a) * width + c % a).setZero();
    for (Eigen::Index r = 0; r < u.rows(); ++r) out((r / a) * width + r % a, (c / a) * width + c % a) = u(r, c);
  }
  return UnitaryMatrix(out);
}

CVector apply_model_step(const UnitaryMatrix& u, const CVector& memory, int alphabet_size) {
  if (alphabet_size < 1 || memory.size() * alphabet_size != u.dim())
    throw ValidationError("memory dimension times alphabet size does not match the unitary");
  CVector in = CVector::Zero(u.dim());
  for (Eigen::Index i = 0; i < memory.size(); ++i) in(i * alphabet_size) = memory(i);
  return u.matrix() * in;
}

std::vector<double> ancilla_distribution(const CVector& joint, int alphabet_size) {
  std::vector<double> p(alphabet_size, 0.0);
  for (Eigen::Index i = 0; i < joint.size(); ++i) p[i % alphabet_size] += std::norm(joint(i));
  return p;
}

namespace {

CVector branch(const CVector& joint, int x, int a) {
  CVector mem(joint.size() / a);
  for (Eigen::Index i = 0; i < mem.size(); ++i) mem(i) = joint(i * a + x);
  return mem;
}

void enumerate_words(const UnitaryMatrix& u, const CVector& mem, int a, int steps, WordCode prefix,
                     std::vector<double>& out) {
  if (steps == 0) {
    out[prefix] = mem.squaredNorm();
    return;
  }
  CVector joint = apply_model_step(u, mem, a);
  for (int x = 0; x < a; ++x) enumerate_words(u, branch(joint, x, a), a, steps - 1, prefix * a + x, out);
}

}  // namespace

std::vector<double> model_word_distribution(const UnitaryMatrix& u, const CVector& memory, int alphabet_size,
                                            int steps) {
  if (steps < 1) throw ValidationError("need at least one step");
  std::vector<double> out(word_count(alphabet_size, steps), 0.0);
  enumerate_words(u, memory, alphabet_size, steps, 0, out);
  return out;
}

WordCode sample_model_word(const UnitaryMatrix& u, const CVector& memory, int alphabet_size, int steps,
                           std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  CVector mem = memory / memory.norm();
  WordCode word = 0;
  for (int s = 0; s < steps; ++s) {
    CVector joint = apply_model_step(u, mem, alphabet_size);
    std::vector<double> p = ancilla_distribution(joint, alphabet_size);
    double r = uniform(rng), acc = 0.0;
    int x = alphabet_size - 1;
    for (int k = 0; k < alphabet_size; ++k) {
      acc += p[k];
      if (r < acc) {
        x = k;
        break;
      }
    }
    mem = branch(joint, x, alphabet_size);
    mem /= mem.norm();
    word = word * alphabet_size + x;
  }
  return word;
}

ZyzAngles zyz_decompose(const CMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2) throw ValidationError("ZYZ decomposition needs a 2x2 matrix");
  ZyzAngles z;
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  z.gamma = std::arg(det) / 2.0;
  const CMatrix v = std::polar(1.0, -z.gamma) * u;
  const Complex a = v(0, 0), b = v(1, 0);
  z.theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  if (std::abs(b) < 1e-14) {
    z.phi = -2.0 * std::arg(a);
  } else if (std::abs(a) < 1e-14) {
    z.phi = 2.0 * std::arg(b);
  } else {
    const double sum = -2.0 * std::arg(a);
    const double diff = 2.0 * std::arg(b);
    z.phi = 0.5 * (sum + diff);
    z.lambda = 0.5 * (sum - diff);
  }
  return z;
}

CosineSine cosine_sine(const CMatrix& u) {
  const Eigen::Index n = u.rows();
  if (n < 2 || n % 2 != 0 || u.cols() != n) throw ValidationError("cosine-sine split needs an even square matrix");
  const Eigen::Index m = n / 2;
  const CMatrix g11 = u.topLeftCorner(m, m), g12 = u.topRightCorner(m, m);
  const CMatrix g21 = u.bottomLeftCorner(m, m), g22 = u.bottomRightCorner(m, m);

  Eigen::JacobiSVD<CMatrix> svd(g11, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CosineSine cs;
  cs.u1 = svd.matrixU();
  cs.v1 = svd.matrixV().adjoint();
  Vector c = svd.singularValues().cwiseMin(1.0);

  // Columns of g21 v1^dag are orthogonal; factor them largest-sine first so the
  // tiny ones cannot steer the leading Householder reflections.
  const CMatrix w = g21 * svd.matrixV();
  CMatrix reversed = w.rowwise().reverse();
  Eigen::HouseholderQR<CMatrix> qr(reversed);
  CMatrix q = qr.householderQ();
  const CMatrix rr = qr.matrixQR();
  cs.u2 = CMatrix(m, m);
  Vector s(m);
  if (max_abs(w) < 1e-14) {
    // Block-diagonal input: any unitary works, and the identity keeps angles trivial.
    cs.u2.setIdentity();
    s.setZero();
  }
  for (Eigen::Index k = 0; k < m && max_abs(w) >= 1e-14; ++k) {
    const Eigen::Index col = m - 1 - k;  // column k of the reversed factorisation
    const Complex d = rr(k, k);
    s(col) = std::abs(d);
    cs.u2.col(col) = q.col(k) * (std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0));
  }

  cs.theta = Vector(m);
  for (Eigen::Index i = 0; i < m; ++i) cs.theta(i) = std::atan2(s(i), c(i));
  const Vector cc = cs.theta.array().cos();
  const Vector ss = cs.theta.array().sin();
  cs.v2 = -(ss.asDiagonal() * (cs.u1.adjoint() * g12)) + cc.asDiagonal() * (cs.u2.adjoint() * g22);
  return cs;
}

namespace {

void emit_unitary(const CMatrix& u, const std::vector<int>& qubits, const std::vector<int>& controls,
                  GateCircuit& out);

void emit_leaf(const CMatrix& u, int qubit, const std::vector<int>& controls, GateCircuit& out) {
  const ZyzAngles z = zyz_decompose(u);
  ++out.leaf_blocks;
  if (controls.empty()) {
    out.gates.push_back(SingleZYZ{qubit, z.gamma, z.phi, z.theta, z.lambda});
    return;
  }
  const std::size_t width = std::size_t{1} << controls.size();
  auto only_on = [&](double angle) {
    std::vector<double> a(width, 0.0);
    a.back() = angle;
    return a;
  };
  out.gates.push_back(MultiplexedRz{qubit, controls, only_on(z.lambda)});
  out.gates.push_back(MultiplexedRy{qubit, controls, only_on(z.theta)});
  out.gates.push_back(MultiplexedRz{qubit, controls, only_on(z.phi)});
  std::vector<int> rest(controls.begin(), controls.end() - 1);
  out.gates.push_back(ControlledU1{controls.back(), rest, z.gamma});
}

// diag(a, b) on qubits = (X (x) I)(I (+) a)(X (x) I)(I (+) b), top qubit first.
void emit_block_diagonal(const CMatrix& a, const CMatrix& b, const std::vector<int>& qubits,
                         const std::vector<int>& controls, GateCircuit& out) {
  std::vector<int> rest(qubits.begin() + 1, qubits.end());
  std::vector<int> inner = controls;
  inner.push_back(qubits[0]);
  emit_unitary(b, rest, inner, out);
  out.gates.push_back(NotGate{qubits[0]});
  emit_unitary(a, rest, inner, out);
  out.gates.push_back(NotGate{qubits[0]});
}

void emit_unitary(const CMatrix& u, const std::vector<int>& qubits, const std::vector<int>& controls,
                  GateCircuit& out) {
  if (qubits.size() == 1) {
    emit_leaf(u, qubits[0], controls, out);
    return;
  }
  const CosineSine cs = cosine_sine(u);
  emit_block_diagonal(cs.v1, cs.v2, qubits, controls, out);

  std::vector<int> mux_controls = controls;
  mux_controls.insert(mux_controls.end(), qubits.begin() + 1, qubits.end());
  const std::size_t rest = qubits.size() - 1;
  std::vector<double> angles(std::size_t{1} << mux_controls.size(), 0.0);
  const std::size_t base = ((std::size_t{1} << controls.size()) - 1) << rest;
  for (Eigen::Index i = 0; i < cs.theta.size(); ++i) angles[base + i] = 2.0 * cs.theta(i);
  out.gates.push_back(MultiplexedRy{qubits[0], mux_controls, angles});
  ++out.multiplexors;

  emit_block_diagonal(cs.u1, cs.u2, qubits, controls, out);
}

}  // namespace

GateCircuit csd_decompose(const UnitaryMatrix& u) {
  if (!is_power_of_two(u.dim())) throw ValidationError("unitary dimension must be a power of two");
  GateCircuit circuit;
  circuit.num_qubits = u.num_qubits();
  if (circuit.num_qubits < 1) throw ValidationError("cannot decompose a 1x1 unitary");
  std::vector<int> qubits(circuit.num_qubits);
  for (int q = 0; q < circuit.num_qubits; ++q) qubits[q] = q;
  emit_unitary(u.matrix(), qubits, {}, circuit);
  circuit.validate();
  return circuit;
}

UnitaryMatrix reconstruct(const GateCircuit& circuit) {
  circuit.validate();
  const Eigen::Index dim = Eigen::Index{1} << circuit.num_qubits;
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const Gate& g : circuit.gates) u = gate_matrix(g, circuit.num_qubits) * u;
  return UnitaryMatrix(u);
}

long circuit_depth_formula(int num_qubits, int steps) {
  if (num_qubits < 1 || steps < 1) throw ValidationError("depth formula needs n >= 1 and t >= 1");
  long pow4 = 1, sum = 0;
  for (int i = 0; i <= num_qubits - 2; ++i) {
    sum += pow4;
    pow4 *= 4;
  }
  long leaves = 1;
  for (int i = 0; i < num_qubits - 1; ++i) leaves *= 4;
  return steps * (7 * leaves + 5 * sum);
}

}  // namespace qmpec
