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

#include "qmpec/process.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

#include "qmpec/error.hpp"

namespace qmpec {

SymbolSequence::SymbolSequence(std::vector<int> symbols, int alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ < 1 || alphabet_size_ > 10)
    throw ValidationError("alphabet size must be in [1, 10], got " + std::to_string(alphabet_size_));
  if (symbols_.empty()) throw InsufficientDataError("symbol sequence is empty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] < 0 || symbols_[i] >= alphabet_size_)
      throw ValidationError("symbol " + std::to_string(symbols_[i]) + " at position " +
                            std::to_string(i) + " outside alphabet of size " +
                            std::to_string(alphabet_size_));
  }
}

WordCode word_count(int alphabet_size, int length) {
  WordCode count = 1;
  for (int i = 0; i < length; ++i) {
    if (count > (WordCode{1} << 40) / static_cast<WordCode>(alphabet_size))
      throw ValidationError("word space too large for a dense table");
    count *= static_cast<WordCode>(alphabet_size);
  }
  return count;
}

std::vector<int> word_symbols(WordCode code, int alphabet_size, int length) {
  std::vector<int> out(length);
  for (int i = length - 1; i >= 0; --i) {
    out[i] = static_cast<int>(code % alphabet_size);
    code /= alphabet_size;
  }
  return out;
}

std::string word_to_string(WordCode code, int alphabet_size, int length) {
  std::string s;
  for (int x : word_symbols(code, alphabet_size, length)) s.push_back(static_cast<char>('0' + x));
  return s;
}

ConditionalDistribution::ConditionalDistribution(int alphabet_size, int history_length,
                                                 std::vector<double> joint_weights)
    : alphabet_size_(alphabet_size),
      history_length_(history_length),
      history_count_(word_count(alphabet_size, history_length)),
      joint_(std::move(joint_weights)) {
  if (history_length < 0) throw ValidationError("history length must be non-negative");
  if (joint_.size() != history_count_ * alphabet_size_)
    throw ValidationError("joint table has wrong size");
  history_weight_.assign(history_count_, 0.0);
  for (WordCode h = 0; h < history_count_; ++h) {
    for (int x = 0; x < alphabet_size_; ++x) {
      double w = joint_[h * alphabet_size_ + x];
      if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("joint weights must be finite and non-negative");
      history_weight_[h] += w;
    }
    total_ += history_weight_[h];
  }
}

std::vector<double> ConditionalDistribution::row(WordCode history) const {
  if (!observed(history))
    throw InsufficientDataError("history " + word_to_string(history, alphabet_size_, history_length_) +
                                " was never observed");
  std::vector<double> out(alphabet_size_);
  for (int x = 0; x < alphabet_size_; ++x) out[x] = joint_weight(history, x) / history_weight_[history];
  return out;
}

double ConditionalDistribution::probability(WordCode history, int symbol) const {
  return row(history).at(symbol);
}

std::vector<WordCode> ConditionalDistribution::observed_histories() const {
  std::vector<WordCode> out;
  for (WordCode h = 0; h < history_count_; ++h)
    if (observed(h)) out.push_back(h);
  return out;
}

ConditionalDistribution conditional_distribution(const SymbolSequence& seq, int history_length) {
  if (history_length < 0) throw ValidationError("history length must be non-negative");
  if (static_cast<std::size_t>(history_length) >= seq.size())
    throw InsufficientDataError("history length " + std::to_string(history_length) +
                                " needs more than " + std::to_string(seq.size()) + " symbols");
  const int a = seq.alphabet_size();
  const WordCode histories = word_count(a, history_length);
  std::vector<double> joint(histories * a, 0.0);
  const auto& s = seq.symbols();
  WordCode window = 0;
  for (int i = 0; i < history_length; ++i) window = window * a + s[i];
  for (std::size_t i = history_length; i < s.size(); ++i) {
    joint[window * a + s[i]] += 1.0;
    if (history_length > 0) window = (window * a + s[i]) % histories;
  }
  return ConditionalDistribution(a, history_length, std::move(joint));
}

void validate(const PerturbedCoinParams& params) {
  if (!(params.p >= 0.0 && params.p <= 1.0))
    throw ValidationError("perturbed coin p must lie in [0, 1]");
  if (params.initial_state != 0 && params.initial_state != 1)
    throw ValidationError("perturbed coin initial state must be 0 or 1");
}

SymbolSequence generate_perturbed_coin(const PerturbedCoinParams& params, std::size_t n) {
  validate(params);
  if (n == 0) throw InsufficientDataError("requested an empty sequence");
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<int> symbols(n);
  int state = params.initial_state;
  for (std::size_t i = 0; i < n; ++i) {
    if (uniform(rng) >= params.p) state = 1 - state;
    symbols[i] = state;
  }
  return SymbolSequence(std::move(symbols), 2);
}

ConditionalDistribution perturbed_coin_exact_conditional(double p, int history_length) {
  validate(PerturbedCoinParams{p, 0, 0});
  const WordCode histories = word_count(2, history_length);
  std::vector<double> joint(histories * 2);
  for (WordCode h = 0; h < histories; ++h) {
    std::vector<int> w = word_symbols(h, 2, history_length);
    double weight = 1.0;
    if (!w.empty()) {
      weight = 0.5;
      for (std::size_t i = 1; i < w.size(); ++i) weight *= (w[i] == w[i - 1]) ? p : 1.0 - p;
    }
    for (int x = 0; x < 2; ++x) {
      double px = w.empty() ? 0.5 : ((x == w.back()) ? p : 1.0 - p);
      joint[h * 2 + x] = weight * px;
    }
  }
  return ConditionalDistribution(2, history_length, std::move(joint));
}

double context_distance(const ConditionalDistribution& table) {
  const int a = table.alphabet_size();
  const int len = table.history_length();
  if (len < 1) throw ValidationError("context distance needs histories of length at least 1");
  if (table.total_weight() <= 0.0) throw InsufficientDataError("conditional table is empty");
  const WordCode contexts = word_count(a, len - 1);
  double worst = 0.0;
  for (int x = 0; x < a; ++x) {
    for (int y = x + 1; y < a; ++y) {
      double num = 0.0;
      double den = 0.0;
      for (WordCode w = 0; w < contexts; ++w) {
        WordCode hx = static_cast<WordCode>(x) * contexts + w;
        WordCode hy = static_cast<WordCode>(y) * contexts + w;
        if (!table.observed(hx) || !table.observed(hy)) continue;
        std::vector<double> px = table.row(hx);
        std::vector<double> py = table.row(hy);
        double tv = 0.0;
        for (int k = 0; k < a; ++k) tv += std::abs(px[k] - py[k]);
        double weight = 0.0;
        for (int z = 0; z < a; ++z) weight += table.history_weight(static_cast<WordCode>(z) * contexts + w);
        num += weight * 0.5 * tv;
        den += weight;
      }
      if (den > 0.0) worst = std::max(worst, num / den);
    }
  }
  return worst;
}

MarkovOrderEstimate effective_markov_order(const SymbolSequence& seq, double xi, int max_order) {
  if (!(xi > 0.0)) throw ValidationError("markov order tolerance must be positive");
  if (max_order < 1) throw ValidationError("markov order bound must be at least 1");
  MarkovOrderEstimate est;
  for (int r = 0; r <= max_order; ++r) {
    ConditionalDistribution table = conditional_distribution(seq, r + 1);
    double d = context_distance(table);
    est.distances.push_back(d);
    if (d < xi) {
      est.order = r;
      est.converged = true;
      return est;
    }
  }
  est.order = max_order;
  est.converged = false;
  return est;
}

SymbolSequence read_sequence(std::istream& in, int alphabet_size) {
  std::vector<int> symbols;
  char c;
  while (in.get(c)) {
    if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
    if (c < '0' || c > '9') throw ValidationError(std::string("unexpected character '") + c + "' in sequence");
    symbols.push_back(c - '0');
  }
  return SymbolSequence(std::move(symbols), alphabet_size);
}

void write_sequence(std::ostream& out, const SymbolSequence& seq) {
  std::string buf;
  buf.reserve(seq.size());
  for (int x : seq.symbols()) buf.push_back(static_cast<char>('0' + x));
  out << buf;
}

}  // namespace qmpec
