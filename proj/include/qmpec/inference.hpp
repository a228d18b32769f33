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

#ifndef QMPEC_INFERENCE_HPP
#define QMPEC_INFERENCE_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmpec/linalg.hpp"
#include "qmpec/process.hpp"

namespace qmpec {

// Phase-less quantum memory states, one per history word, each a real unit
// vector over the |A|^L future words.
struct MemoryStateSet {
  int alphabet_size = 2;
  int future_length = 1;
  std::vector<Vector> states;
  std::vector<double> weights;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> emission;  // emission[i][x] = P(x | state i)
  std::vector<std::vector<int>> successor;    // successor[i][x], -1 when unseen

  std::size_t size() const { return states.size(); }
  Matrix gram() const;
  void validate() const;
};

MemoryStateSet infer_memory_states(const ConditionalDistribution& cond, int future_length);

// States of the perturbed coin built from its exact conditional table.
MemoryStateSet perturbed_coin_memory_states(double p);

struct MergeReport {
  double delta = 0.0;
  std::vector<std::vector<std::string>> clusters;
  Matrix gram;
  std::vector<std::string> warnings;
};

inline double merge_tolerance(std::size_t n_process) {
  return 1.0 / (2.0 * std::sqrt(static_cast<double>(n_process)));
}

std::pair<MemoryStateSet, MergeReport> merge_states(const MemoryStateSet& set, std::size_t n_process,
                                                    std::optional<double> delta_override = std::nullopt);

struct EpsilonMachine {
  int alphabet_size = 2;
  std::vector<std::vector<int>> next;
  std::vector<std::vector<double>> probability;
  std::vector<double> stationary;

  std::size_t num_states() const { return next.size(); }
  Matrix state_transition_matrix() const;
  void validate() const;
};

// Causal states are the merged clusters; transition probabilities are the
// weight-averaged conditionals carried by the merge.
EpsilonMachine build_epsilon_machine(const MemoryStateSet& merged);

EpsilonMachine perturbed_coin_machine(double p);

double shannon_entropy_bits(std::span<const double> probabilities);

double classical_statistical_complexity(const EpsilonMachine& machine);
double quantum_statistical_memory(const MemoryStateSet& set);
double perturbed_coin_cq(double p);

struct AdvantageRegion {
  double threshold = 0.0;
  double p_low = 0.0;
  double p_high = 1.0;
  bool full_range = false;  // threshold >= 1: every p qualifies
};

// {p : C_q(p) <= N_classical C_mu / N_mc} for the perturbed coin, p = 1/2
// itself excluded.
AdvantageRegion memory_advantage_region(double n_mc, double n_classical, double c_mu);

}  // namespace qmpec

#endif  // QMPEC_INFERENCE_HPP
