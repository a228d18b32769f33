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

#ifndef QMPEC_NOISE_HPP
#define QMPEC_NOISE_HPP

#include <span>
#include <vector>

#include "qmpec/circuit.hpp"
#include "qmpec/ptm.hpp"

namespace qmpec {

// Parametric device noise, attached after each ideal operation.
//   single-qubit gate: dephasing(q_z), then amplitude damping(gamma_ad), then
//                      depolarizing(q_dep)
//   multi-qubit gate:  joint depolarizing(q_dep2) on the gate's qubits, then
//                      dephasing and amplitude damping on each of them
//   preparation:       the prepared state is swapped for its orthogonal
//                      partner with probability eps_prep
//   measurement:       each recorded bit flips with probability eps_meas
struct NoiseModel {
  double q_dep = 0.0;
  double q_dep2 = 0.0;
  double gamma_ad = 0.0;
  double q_z = 0.0;
  double eps_meas = 0.0;
  double eps_prep = 0.0;

  void validate() const;
  bool noiseless() const;
};

PauliTransferMatrix depolarizing_ptm(double q, int num_qubits);
PauliTransferMatrix amplitude_damping_ptm(double gamma);
PauliTransferMatrix dephasing_ptm(double q);

std::vector<CMatrix> amplitude_damping_kraus(double gamma);
std::vector<CMatrix> dephasing_kraus(double q);

PauliTransferMatrix gate_noise_ptm(const NoiseModel& noise, std::span<const int> qubits, int num_qubits);

// Noise after a k-qubit unitary acting on `qubits`.
PauliTransferMatrix noisy_unitary_ptm(const CMatrix& u, std::span<const int> qubits, int num_qubits,
                                      const NoiseModel& noise);

PauliTransferMatrix noisy_gate_ptm(const Gate& gate, int num_qubits, const NoiseModel& noise);
PauliTransferMatrix noisy_circuit_ptm(const GateCircuit& circuit, const NoiseModel& noise);

PtmStateVector apply_noisy_gate(const PtmStateVector& state, const Gate& gate, const NoiseModel& noise);

PtmStateVector noisy_prep(std::span<const PrepLabel> labels, const NoiseModel& noise);
PtmMeasurement noisy_pauli_observable(std::span<const PauliLabel> labels, const NoiseModel& noise);

// Z-basis outcome distribution of the listed qubits (first is the most
// significant outcome bit) with readout flips. Small violations from
// round-off are clamped; larger ones raise NumericalError.
std::vector<double> measure_distribution(const PtmStateVector& state, std::span<const int> qubits,
                                         const NoiseModel& noise);
std::vector<double> measure_distribution(const PtmStateVector& state, const NoiseModel& noise);

}  // namespace qmpec

#endif  // QMPEC_NOISE_HPP
