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

#ifndef QMPEC_CIRCUIT_HPP
#define QMPEC_CIRCUIT_HPP

#include <string>
#include <variant>
#include <vector>

#include "qmpec/linalg.hpp"

namespace qmpec {

// Qubit 0 is the most significant bit of a basis-state index.
inline int qubit_bit(long long index, int qubit, int num_qubits) {
  return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1);
}

// Uniformly controlled rotation about Y: angles[c] is applied to target when
// the controls read c, with controls[0] the most significant bit of c.
struct MultiplexedRy {
  int target = 0;
  std::vector<int> controls;
  std::vector<double> angles;
};

struct MultiplexedRz {
  int target = 0;
  std::vector<int> controls;
  std::vector<double> angles;
};

// e^{i gamma} Rz(phi) Ry(theta) Rz(lambda).
struct SingleZYZ {
  int qubit = 0;
  double gamma = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double lambda = 0.0;
};

struct NotGate {
  int qubit = 0;
};

// Phase e^{i angle} on the state where target and all controls are 1.
struct ControlledU1 {
  int target = 0;
  std::vector<int> controls;
  double angle = 0.0;
};

using Gate = std::variant<MultiplexedRy, MultiplexedRz, SingleZYZ, NotGate, ControlledU1>;

std::string gate_kind(const Gate& gate);
std::vector<int> gate_qubits(const Gate& gate);
std::vector<double> gate_angles(const Gate& gate);

CMatrix ry_matrix(double theta);
CMatrix rz_matrix(double theta);
CMatrix zyz_matrix(double gamma, double phi, double theta, double lambda);

// Full 2^n x 2^n matrix of a gate.
CMatrix gate_matrix(const Gate& gate, int num_qubits);

struct GateCircuit {
  int num_qubits = 1;
  std::vector<Gate> gates;
  int leaf_blocks = 0;   // 2x2 blocks emitted by the decomposition
  int multiplexors = 0;  // cosine-sine multiplexed Ry stages

  // 7 units per 2x2 block and 5 per multiplexor.
  long depth_reported() const { return 7L * leaf_blocks + 5L * multiplexors; }
  void validate() const;
};

}  // namespace qmpec

#endif  // QMPEC_CIRCUIT_HPP
