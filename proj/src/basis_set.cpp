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

#include "qmpec/basis_set.hpp"

#include <cmath>
#include <numbers>

#include "qmpec/error.hpp"

namespace qmpec {

namespace {

const Complex kI(0.0, 1.0);

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

struct Gates1 {
  CMatrix id = CMatrix::Identity(2, 2);
  CMatrix x = mat2(0, 1, 1, 0);
  CMatrix y = mat2(0, -kI, kI, 0);
  CMatrix z = mat2(1, 0, 0, -1);
  CMatrix h = mat2(1, 1, 1, -1) / std::sqrt(2.0);
  CMatrix s = mat2(1, 0, 0, kI);
  CMatrix sd = mat2(1, 0, 0, -kI);
};

CVector prep_vector(PrepLabel label) {
  CVector v(2);
  const double r = 1.0 / std::sqrt(2.0);
  switch (label) {
    case PrepLabel::Zero: v << 1, 0; break;
    case PrepLabel::One: v << 0, 1; break;
    case PrepLabel::Plus: v << r, r; break;
    case PrepLabel::YPlus: v << r, Complex(0, r); break;
  }
  return v;
}

std::vector<CMatrix> prepare_kraus(PrepLabel label) {
  const CVector psi = prep_vector(label);
  std::vector<CMatrix> k;
  for (int i = 0; i < 2; ++i) {
    CVector e = CVector::Zero(2);
    e(i) = 1.0;
    k.push_back(psi * e.adjoint());
  }
  return k;
}

// A single-qubit entry, either a unitary or a preparation.
struct Entry1 {
  std::string label;
  bool is_prep = false;
  CMatrix u;
  PrepLabel prep = PrepLabel::Zero;
};

std::vector<Entry1> single_qubit_entries() {
  const Gates1 g;
  const CMatrix& h = g.h;  // Hermitian, so h^dag = h
  return {
      {"id", false, g.id, {}},
      {"X", false, g.x, {}},
      {"Y", false, g.y, {}},
      {"Z", false, g.z, {}},
      {"HdSdH", false, h * g.sd * h, {}},
      {"SHSdHdSd", false, g.s * h * g.sd * h * g.sd, {}},
      {"Sd", false, g.sd, {}},
      {"SHSd", false, g.s * h * g.sd, {}},
      {"H", false, h, {}},
      {"HdSdHSH", false, h * g.sd * h * g.s * h, {}},
      {"P+", true, {}, PrepLabel::Plus},
      {"Py+", true, {}, PrepLabel::YPlus},
      {"P0", true, {}, PrepLabel::Zero},
  };
}

void append_entry(const Entry1& e, int qubit, std::vector<BasisStep>& steps) {
  if (e.is_prep) {
    steps.push_back(PrepareStep{qubit, e.prep});
  } else if (e.label != "id") {
    steps.push_back(UnitaryStep{{qubit}, e.u});
  }
}

std::vector<CMatrix> step_kraus(const BasisStep& step, int n) {
  if (const auto* u = std::get_if<UnitaryStep>(&step)) return {embed_unitary(u->u, u->qubits, n)};
  const auto& p = std::get<PrepareStep>(step);
  std::vector<CMatrix> out;
  const int q[1] = {p.qubit};
  for (const CMatrix& k : prepare_kraus(p.state)) out.push_back(embed_unitary(k, q, n));
  return out;
}

BasisOperation finish(std::string label, std::vector<BasisStep> steps, int n) {
  std::vector<CMatrix> kraus{CMatrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n)};
  for (const BasisStep& s : steps) {
    std::vector<CMatrix> next;
    for (const CMatrix& a : step_kraus(s, n))
      for (const CMatrix& k : kraus) next.push_back(a * k);
    kraus = std::move(next);
  }
  PauliTransferMatrix ideal = ptm_of_kraus(kraus);
  return BasisOperation{std::move(label), std::move(steps), std::move(kraus), std::move(ideal)};
}

CMatrix controlled(const CMatrix& p0, const CMatrix& p1, const CMatrix& u0, const CMatrix& u1) {
  return kron(p0, u0) + kron(p1, u1);
}

}  // namespace

std::vector<PauliTransferMatrix> BasisOperationSet::ideal_ptms() const {
  std::vector<PauliTransferMatrix> out;
  out.reserve(operations.size());
  for (const BasisOperation& op : operations) out.push_back(op.ideal);
  return out;
}

void BasisOperationSet::validate() const {
  for (const BasisOperation& op : operations) {
    if (op.ideal.num_qubits != num_qubits) throw ValidationError("basis operation " + op.label + " has wrong size");
    if (!op.ideal.trace_preserving(1e-9)) throw ValidationError("basis operation " + op.label + " is not trace preserving");
  }
}

BasisOperationSet build_basis_set(int num_qubits) {
  if (num_qubits != 1 && num_qubits != 2) throw ValidationError("basis sets exist for 1 or 2 qubits only");
  const std::vector<Entry1> singles = single_qubit_entries();
  BasisOperationSet set;
  set.num_qubits = num_qubits;
  if (num_qubits == 1) {
    for (const Entry1& e : singles) {
      std::vector<BasisStep> steps;
      append_entry(e, 0, steps);
      set.operations.push_back(finish(e.label, std::move(steps), 1));
    }
    return set;
  }

  for (const Entry1& a : singles) {
    for (const Entry1& b : singles) {
      std::vector<BasisStep> steps;
      append_entry(a, 0, steps);
      append_entry(b, 1, steps);
      set.operations.push_back(finish(a.label + "(x)" + b.label, std::move(steps), 2));
    }
  }

  const Gates1 g;
  const CMatrix k = g.s * g.h;
  const CMatrix kd = k.adjoint();
  const CMatrix p0 = mat2(1, 0, 0, 0), p1 = mat2(0, 0, 0, 1);
  const double c8 = std::cos(std::numbers::pi / 8), s8 = std::sin(std::numbers::pi / 8);
  CVector hp(2), hm(2);
  hp << c8, s8;
  hm << -s8, c8;
  const CMatrix hx_plus = hp * hp.adjoint(), hx_minus = hm * hm.adjoint();

  const CMatrix cx = controlled(p0, p1, g.id, g.x);
  const CMatrix x1 = kron(g.x, g.id);
  const CMatrix h1 = kron(g.h, g.id);
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  CMatrix iswap = CMatrix::Zero(4, 4);
  iswap(0, 0) = iswap(3, 3) = 1.0;
  iswap(1, 2) = iswap(2, 1) = kI;

  struct Pattern {
    const CMatrix* a;
    const CMatrix* b;
    const char* name;
  };
  const CMatrix& id = g.id;
  const std::vector<Pattern> nine = {{&k, &k, "K,K"},   {&k, &kd, "K,Kd"},   {&k, &id, "K,id"},
                                     {&kd, &k, "Kd,K"}, {&kd, &kd, "Kd,Kd"}, {&kd, &id, "Kd,id"},
                                     {&id, &k, "id,K"}, {&id, &kd, "id,Kd"}, {&id, &id, "id,id"}};
  const std::vector<Pattern> swap_three = {nine[6], nine[7], nine[8]};
  const std::vector<Pattern> iswap_six = {nine[0], nine[1], nine[2], nine[6], nine[7], nine[8]};

  struct Family {
    std::string name;
    CMatrix u;
    const std::vector<Pattern>* patterns;
  };
  const std::vector<Family> families = {
      {"CX", cx, &nine},
      {"X1.CX.X1", x1 * cx * x1, &nine},
      {"CS", controlled(p0, p1, g.id, g.s), &nine},
      {"CH", controlled(p0, p1, g.id, g.h), &nine},
      {"CHX", controlled(hx_plus, hx_minus, g.id, g.x), &nine},
      {"CX.H1", cx * h1, &nine},
      {"SWAP", swap, &swap_three},
      {"iSWAP", iswap, &iswap_six},
      {"SWAP.H1", swap * h1, &nine},
  };

  // (A (x) B) o U o (A^dag (x) B^dag), each local layer one gate per qubit.
  for (const Family& f : families) {
    for (const Pattern& p : *f.patterns) {
      std::vector<BasisStep> steps;
      if (p.a != &id) steps.push_back(UnitaryStep{{0}, p.a->adjoint()});
      if (p.b != &id) steps.push_back(UnitaryStep{{1}, p.b->adjoint()});
      steps.push_back(UnitaryStep{{0, 1}, f.u});
      if (p.a != &id) steps.push_back(UnitaryStep{{0}, *p.a});
      if (p.b != &id) steps.push_back(UnitaryStep{{1}, *p.b});
      set.operations.push_back(finish(f.name + "[" + p.name + "]", std::move(steps), 2));
    }
  }
  return set;
}

PauliTransferMatrix implement_noisy(const BasisOperation& op, int num_qubits, const NoiseModel& noise) {
  PauliTransferMatrix out = PauliTransferMatrix::identity(num_qubits);
  for (const BasisStep& step : op.steps) {
    if (const auto* u = std::get_if<UnitaryStep>(&step)) {
      out = out.then(noisy_unitary_ptm(u->u, u->qubits, num_qubits, noise));
    } else {
      const auto& p = std::get<PrepareStep>(step);
      const PrepLabel label[1] = {p.state};
      PauliTransferMatrix reset{1, Matrix::Zero(4, 4)};
      reset.matrix.col(0) = noisy_prep(label, noise).components;
      const int q[1] = {p.qubit};
      out = out.then(embed_ptm(reset, q, num_qubits));
    }
  }
  return out;
}

}  // namespace qmpec
