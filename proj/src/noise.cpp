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

#include "qmpec/noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qmpec/error.hpp"

namespace qmpec {

void NoiseModel::validate() const {
  const std::pair<const char*, double> params[] = {{"q_dep", q_dep},       {"q_dep2", q_dep2},
                                                   {"gamma_ad", gamma_ad}, {"q_z", q_z},
                                                   {"eps_meas", eps_meas}, {"eps_prep", eps_prep}};
  for (const auto& [name, value] : params)
    if (!(value >= 0.0 && value <= 1.0))
      throw ValidationError(std::string("noise parameter ") + name + " must lie in [0, 1]");
}

bool NoiseModel::noiseless() const {
  return q_dep == 0.0 && q_dep2 == 0.0 && gamma_ad == 0.0 && q_z == 0.0 && eps_meas == 0.0 && eps_prep == 0.0;
}

PauliTransferMatrix depolarizing_ptm(double q, int num_qubits) {
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("depolarizing probability must lie in [0, 1]");
  PauliTransferMatrix out = PauliTransferMatrix::identity(num_qubits);
  for (Eigen::Index i = 1; i < out.dim(); ++i) out.matrix(i, i) = 1.0 - q;
  return out;
}

std::vector<CMatrix> amplitude_damping_kraus(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("damping rate must lie in [0, 1]");
  CMatrix e0 = CMatrix::Zero(2, 2), e1 = CMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - gamma);
  e1(0, 1) = std::sqrt(gamma);
  return {e0, e1};
}

std::vector<CMatrix> dephasing_kraus(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("dephasing probability must lie in [0, 1]");
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return {std::sqrt(1.0 - q) * CMatrix::Identity(2, 2), std::sqrt(q) * z};
}

PauliTransferMatrix amplitude_damping_ptm(double gamma) {
  return ptm_of_kraus(amplitude_damping_kraus(gamma));
}

PauliTransferMatrix dephasing_ptm(double q) {
  return ptm_of_kraus(dephasing_kraus(q));
}

namespace {

PauliTransferMatrix relaxation_ptm(const NoiseModel& noise) {
  return dephasing_ptm(noise.q_z).then(amplitude_damping_ptm(noise.gamma_ad));
}

}  // namespace

PauliTransferMatrix gate_noise_ptm(const NoiseModel& noise, std::span<const int> qubits, int num_qubits) {
  noise.validate();
  if (qubits.empty()) return PauliTransferMatrix::identity(num_qubits);
  const PauliTransferMatrix relax = relaxation_ptm(noise);
  if (qubits.size() == 1) return embed_ptm(relax.then(depolarizing_ptm(noise.q_dep, 1)), qubits, num_qubits);
  PauliTransferMatrix out =
      embed_ptm(depolarizing_ptm(noise.q_dep2, static_cast<int>(qubits.size())), qubits, num_qubits);
  for (int q : qubits) {
    const int single[1] = {q};
    out = out.then(embed_ptm(relax, single, num_qubits));
  }
  return out;
}

PauliTransferMatrix noisy_unitary_ptm(const CMatrix& u, std::span<const int> qubits, int num_qubits,
                                      const NoiseModel& noise) {
  const PauliTransferMatrix ideal = embed_ptm(ptm_of_unitary(u), qubits, num_qubits);
  return ideal.then(gate_noise_ptm(noise, qubits, num_qubits));
}

PauliTransferMatrix noisy_gate_ptm(const Gate& gate, int num_qubits, const NoiseModel& noise) {
  const PauliTransferMatrix ideal = ptm_of_unitary(gate_matrix(gate, num_qubits));
  const std::vector<int> qubits = gate_qubits(gate);
  return ideal.then(gate_noise_ptm(noise, qubits, num_qubits));
}

PauliTransferMatrix noisy_circuit_ptm(const GateCircuit& circuit, const NoiseModel& noise) {
  circuit.validate();
  PauliTransferMatrix out = PauliTransferMatrix::identity(circuit.num_qubits);
  for (const Gate& g : circuit.gates) out = out.then(noisy_gate_ptm(g, circuit.num_qubits, noise));
  return out;
}

PtmStateVector apply_noisy_gate(const PtmStateVector& state, const Gate& gate, const NoiseModel& noise) {
  if (state.components.size() != ptm_dim(state.num_qubits)) throw ValidationError("state vector has wrong length");
  const PauliTransferMatrix op = noisy_gate_ptm(gate, state.num_qubits, noise);
  return {state.num_qubits, op.matrix * state.components};
}

PtmStateVector noisy_prep(std::span<const PrepLabel> labels, const NoiseModel& noise) {
  noise.validate();
  PtmStateVector ideal = prep_state_ptm(labels);
  const int n = ideal.num_qubits;
  const double shrink = 1.0 - 2.0 * noise.eps_prep;
  for (Eigen::Index s = 0; s < ideal.components.size(); ++s) {
    int weight = 0;
    for (int q = 0; q < n; ++q) weight += pauli_digit(s, q, n) != 0;
    ideal.components(s) *= std::pow(shrink, weight);
  }
  return ideal;
}

PtmMeasurement noisy_pauli_observable(std::span<const PauliLabel> labels, const NoiseModel& noise) {
  noise.validate();
  PtmMeasurement m = pauli_observable(labels);
  double scale = 1.0;
  for (PauliLabel l : labels)
    if (l != PauliLabel::I) scale *= 1.0 - 2.0 * noise.eps_meas;
  m.components *= scale;
  return m;
}

std::vector<double> measure_distribution(const PtmStateVector& state, std::span<const int> qubits,
                                         const NoiseModel& noise) {
  noise.validate();
  const int n = state.num_qubits;
  if (state.components.size() != ptm_dim(n)) throw ValidationError("state vector has wrong length");
  if (std::abs(state.components(0) - 1.0) > 1e-9) throw NumericalError("state is not normalized");
  const int k = static_cast<int>(qubits.size());
  for (int q : qubits)
    if (q < 0 || q >= n) throw ValidationError("measured qubit out of range");
  const double flip = 1.0 - 2.0 * noise.eps_meas;
  const std::size_t outcomes = std::size_t{1} << k;
  std::vector<double> probs(outcomes, 0.0);
  // Expand each projector prod (I + (-1)^b Z)/2 over subsets of measured qubits.
  for (std::size_t subset = 0; subset < outcomes; ++subset) {
    Eigen::Index index = 0;
    int size = 0;
    for (int j = 0; j < k; ++j) {
      if ((subset >> (k - 1 - j)) & 1) {
        index += Eigen::Index{3} << (2 * (n - 1 - qubits[j]));
        ++size;
      }
    }
    const double term = state.components(index) * std::pow(flip, size);
    for (std::size_t b = 0; b < outcomes; ++b) {
      const int parity = std::popcount(b & subset) & 1;
      probs[b] += (parity ? -term : term);
    }
  }
  double total = 0.0;
  for (double& p : probs) {
    p /= static_cast<double>(outcomes);
    if (p < -1e-9 || p > 1.0 + 1e-9) {
      std::ostringstream msg;
      msg << "unphysical state: outcome probability " << p;
      throw NumericalError(msg.str());
    }
    p = std::clamp(p, 0.0, 1.0);
    total += p;
  }
  for (double& p : probs) p /= total;
  return probs;
}

std::vector<double> measure_distribution(const PtmStateVector& state, const NoiseModel& noise) {
  std::vector<int> all(state.num_qubits);
  std::iota(all.begin(), all.end(), 0);
  return measure_distribution(state, all, noise);
}

}  // namespace qmpec
