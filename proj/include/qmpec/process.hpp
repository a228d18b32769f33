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

#ifndef QMPEC_PROCESS_HPP
#define QMPEC_PROCESS_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmpec {

// A finite realisation of a discrete stochastic process.
class SymbolSequence {
 public:
  SymbolSequence(std::vector<int> symbols, int alphabet_size);

  const std::vector<int>& symbols() const { return symbols_; }
  int alphabet_size() const { return alphabet_size_; }
  std::size_t size() const { return symbols_.size(); }
  int operator[](std::size_t i) const { return symbols_[i]; }

 private:
  std::vector<int> symbols_;
  int alphabet_size_;
};

// Words over the alphabet are packed base-|A|, first symbol most significant.
using WordCode = std::uint64_t;

WordCode word_count(int alphabet_size, int length);
std::string word_to_string(WordCode code, int alphabet_size, int length);
std::vector<int> word_symbols(WordCode code, int alphabet_size, int length);

// Maximum-likelihood estimate of P(x0 | x_{-L:0}) from the N - L sliding
// windows of a sequence. Weights are counts for empirical tables; the exact
// constructor accepts probabilities instead.
class ConditionalDistribution {
 public:
  ConditionalDistribution(int alphabet_size, int history_length,
                          std::vector<double> joint_weights);

  int alphabet_size() const { return alphabet_size_; }
  int history_length() const { return history_length_; }
  WordCode history_count() const { return history_count_; }

  double total_weight() const { return total_; }
  double history_weight(WordCode history) const { return history_weight_[history]; }
  double joint_weight(WordCode history, int symbol) const {
    return joint_[history * alphabet_size_ + symbol];
  }
  bool observed(WordCode history) const { return history_weight_[history] > 0.0; }

  // Probability vector over the next symbol. Requires observed(history).
  std::vector<double> row(WordCode history) const;
  double probability(WordCode history, int symbol) const;

  std::vector<WordCode> observed_histories() const;

 private:
  int alphabet_size_;
  int history_length_;
  WordCode history_count_;
  std::vector<double> joint_;
  std::vector<double> history_weight_;
  double total_ = 0.0;
};

ConditionalDistribution conditional_distribution(const SymbolSequence& seq, int history_length);

struct PerturbedCoinParams {
  double p = 0.5;  // probability that the hidden state persists
  std::uint64_t seed = 0;
  int initial_state = 0;
};

void validate(const PerturbedCoinParams& params);

SymbolSequence generate_perturbed_coin(const PerturbedCoinParams& params, std::size_t n);

// Exact stationary table of the perturbed coin for histories of length L.
ConditionalDistribution perturbed_coin_exact_conditional(double p, int history_length);

struct MarkovOrderEstimate {
  int order = 0;
  bool converged = false;
  std::vector<double> distances;  // max averaged distance for r = 0, 1, ...
};

// Max over prepended symbol pairs (x, x') of the weighted average total
// variation between P(X0 | x w) and P(X0 | x' w), w ranging over contexts of
// length r = table.history_length() - 1 where both extensions are observed.
double context_distance(const ConditionalDistribution& table);

MarkovOrderEstimate effective_markov_order(const SymbolSequence& seq, double xi, int max_order);

inline double default_xi(std::size_t n) { return 1.0 / std::sqrt(static_cast<double>(n)); }

SymbolSequence read_sequence(std::istream& in, int alphabet_size);
void write_sequence(std::ostream& out, const SymbolSequence& seq);

}  // namespace qmpec

#endif  // QMPEC_PROCESS_HPP
