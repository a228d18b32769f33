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

#ifndef QMPEC_BASIS_SET_HPP
#define QMPEC_BASIS_SET_HPP

#include <string>
#include <variant>
#include <vector>

#include "qmpec/noise.hpp"
#include "qmpec/ptm.hpp"

namespace qmpec {

// One compiled gate: a unitary on the listed qubits, noisy as a single gate.
struct UnitaryStep {
  std::vector<int> qubits;
  CMatrix u;
};

// Discard the qubit and prepare a fresh state on it.
struct PrepareStep {
  int qubit = 0;
  PrepLabel state = PrepLabel::Zero;
};

using BasisStep = std::variant<UnitaryStep, PrepareStep>;

struct BasisOperation {
  std::string label;
  std::vector<BasisStep> steps;  // in order of application
  std::vector<CMatrix> kraus;
  PauliTransferMatrix ideal;
};

struct BasisOperationSet {
  int num_qubits = 1;
  std::vector<BasisOperation> operations;

  std::size_t size() const { return operations.size(); }
  std::vector<PauliTransferMatrix> ideal_ptms() const;
  void validate() const;
};

// 13 single-qubit maps, or their 169 tensor pairs plus 72 conjugated
// entangling maps for two qubits.
BasisOperationSet build_basis_set(int num_qubits);

// The operation as executed on the device, with noise after every step.
PauliTransferMatrix implement_noisy(const BasisOperation& op, int num_qubits, const NoiseModel& noise);

}  // namespace qmpec

#endif  // QMPEC_BASIS_SET_HPP
