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

#include "qmpec/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qmpec/error.hpp"

namespace qmpec {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

long long control_code(long long index, const std::vector<int>& controls, int n) {
  long long c = 0;
  for (int q : controls) c = (c << 1) | qubit_bit(index, q, n);
  return c;
}

// Applies a 2x2 block chosen per basis state to the target qubit.
template <class BlockFn>
CMatrix targeted_matrix(int target, int n, BlockFn block) {
  const long long dim = 1LL << n;
  const long long mask = 1LL << (n - 1 - target);
  CMatrix m = CMatrix::Zero(dim, dim);
  for (long long i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const long long j = i | mask;
    CMatrix b = block(i);
    m(i, i) = b(0, 0);
    m(i, j) = b(0, 1);
    m(j, i) = b(1, 0);
    m(j, j) = b(1, 1);
  }
  return m;
}

}  // namespace

std::string gate_kind(const Gate& gate) {
  return std::visit(Overloaded{[](const MultiplexedRy&) { return std::string("MultiplexedRy"); },
                               [](const MultiplexedRz&) { return std::string("MultiplexedRz"); },
                               [](const SingleZYZ&) { return std::string("SingleZYZ"); },
                               [](const NotGate&) { return std::string("NotGate"); },
                               [](const ControlledU1&) { return std::string("ControlledU1"); }},
                    gate);
}

// Target first, then controls.
std::vector<int> gate_qubits(const Gate& gate) {
  return std::visit(Overloaded{[](const MultiplexedRy& g) {
                                 std::vector<int> q{g.target};
                                 q.insert(q.end(), g.controls.begin(), g.controls.end());
                                 return q;
                               },
                               [](const MultiplexedRz& g) {
                                 std::vector<int> q{g.target};
                                 q.insert(q.end(), g.controls.begin(), g.controls.end());
                                 return q;
                               },
                               [](const SingleZYZ& g) { return std::vector<int>{g.qubit}; },
                               [](const NotGate& g) { return std::vector<int>{g.qubit}; },
                               [](const ControlledU1& g) {
                                 std::vector<int> q{g.target};
                                 q.insert(q.end(), g.controls.begin(), g.controls.end());
                                 return q;
                               }},
                    gate);
}

std::vector<double> gate_angles(const Gate& gate) {
  return std::visit(Overloaded{[](const MultiplexedRy& g) { return g.angles; },
                               [](const MultiplexedRz& g) { return g.angles; },
                               [](const SingleZYZ& g) { return std::vector<double>{g.gamma, g.phi, g.theta, g.lambda}; },
                               [](const NotGate&) { return std::vector<double>{}; },
                               [](const ControlledU1& g) { return std::vector<double>{g.angle}; }},
                    gate);
}

CMatrix ry_matrix(double theta) {
  CMatrix m(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -s, s, c;
  return m;
}

CMatrix rz_matrix(double theta) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -theta / 2);
  m(1, 1) = std::polar(1.0, theta / 2);
  return m;
}

CMatrix zyz_matrix(double gamma, double phi, double theta, double lambda) {
  return std::polar(1.0, gamma) * rz_matrix(phi) * ry_matrix(theta) * rz_matrix(lambda);
}

CMatrix gate_matrix(const Gate& gate, int n) {
  for (int q : gate_qubits(gate))
    if (q < 0 || q >= n) throw ValidationError("gate qubit " + std::to_string(q) + " outside register");
  return std::visit(
      Overloaded{[n](const MultiplexedRy& g) {
                   return targeted_matrix(g.target, n, [&](long long i) {
                     return ry_matrix(g.angles.at(control_code(i, g.controls, n)));
                   });
                 },
                 [n](const MultiplexedRz& g) {
                   return targeted_matrix(g.target, n, [&](long long i) {
                     return rz_matrix(g.angles.at(control_code(i, g.controls, n)));
                   });
                 },
                 [n](const SingleZYZ& g) {
                   CMatrix b = zyz_matrix(g.gamma, g.phi, g.theta, g.lambda);
                   return targeted_matrix(g.qubit, n, [&](long long) { return b; });
                 },
                 [n](const NotGate& g) {
                   CMatrix b(2, 2);
                   b << 0, 1, 1, 0;
                   return targeted_matrix(g.qubit, n, [&](long long) { return b; });
                 },
                 [n](const ControlledU1& g) {
                   const long long dim = 1LL << n;
                   CMatrix m = CMatrix::Identity(dim, dim);
                   for (long long i = 0; i < dim; ++i) {
                     bool on = qubit_bit(i, g.target, n) == 1;
                     for (int c : g.controls) on = on && qubit_bit(i, c, n) == 1;
                     if (on) m(i, i) = std::polar(1.0, g.angle);
                   }
                   return m;
                 }},
      gate);
}

void GateCircuit::validate() const {
  if (num_qubits < 1) throw ValidationError("circuit needs at least one qubit");
  for (const Gate& g : gates) {
    std::vector<int> q = gate_qubits(g);
    std::set<int> distinct(q.begin(), q.end());
    if (distinct.size() != q.size()) throw ValidationError(gate_kind(g) + " repeats a qubit");
    for (int x : q)
      if (x < 0 || x >= num_qubits) throw ValidationError(gate_kind(g) + " qubit index out of range");
    auto check_mux = [](const auto& m) {
      if (m.angles.size() != (std::size_t{1} << m.controls.size()))
        throw ValidationError("multiplexor angle count must be 2^controls");
    };
    if (auto* ry = std::get_if<MultiplexedRy>(&g)) check_mux(*ry);
    if (auto* rz = std::get_if<MultiplexedRz>(&g)) check_mux(*rz);
  }
}

}  // namespace qmpec
