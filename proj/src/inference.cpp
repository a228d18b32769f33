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

#include "qmpec/inference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qmpec/error.hpp"

namespace qmpec {

Matrix MemoryStateSet::gram() const {
  const auto m = static_cast<Eigen::Index>(states.size());
  Matrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) g(i, j) = g(j, i) = states[i].dot(states[j]);
  return g;
}

void MemoryStateSet::validate() const {
  const std::size_t m = states.size();
  if (m == 0) throw ValidationError("memory state set is empty");
  if (weights.size() != m || labels.size() != m || emission.size() != m || successor.size() != m)
    throw ValidationError("memory state set fields have inconsistent lengths");
  const auto dim = static_cast<Eigen::Index>(word_count(alphabet_size, future_length));
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (states[i].size() != dim) throw ValidationError("memory state " + labels[i] + " has wrong dimension");
    if (std::abs(states[i].norm() - 1.0) > 1e-10) throw ValidationError("memory state " + labels[i] + " is not normalized");
    if (states[i].minCoeff() < 0.0) throw ValidationError("memory state " + labels[i] + " has a negative amplitude");
    if (emission[i].size() != static_cast<std::size_t>(alphabet_size) ||
        successor[i].size() != static_cast<std::size_t>(alphabet_size))
      throw ValidationError("memory state " + labels[i] + " has wrong transition arity");
    for (int s : successor[i])
      if (s < -1 || s >= static_cast<int>(m)) throw ValidationError("successor index out of range");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-10) throw ValidationError("memory state weights do not sum to 1");
}

MemoryStateSet infer_memory_states(const ConditionalDistribution& cond, int future_length) {
  if (cond.history_length() != future_length)
    throw ValidationError("conditional table has history length " + std::to_string(cond.history_length()) +
                          ", expected " + std::to_string(future_length));
  const int a = cond.alphabet_size();
  const int len = future_length;
  const std::vector<WordCode> histories = cond.observed_histories();
  if (histories.empty()) throw InsufficientDataError("conditional table is empty");
  const WordCode hcount = cond.history_count();
  const WordCode futures = word_count(a, len);

  std::vector<int> index_of(hcount, -1);
  for (std::size_t i = 0; i < histories.size(); ++i) index_of[histories[i]] = static_cast<int>(i);

  MemoryStateSet out;
  out.alphabet_size = a;
  out.future_length = len;
  for (WordCode h : histories) {
    Vector amp(static_cast<Eigen::Index>(futures));
    for (WordCode f = 0; f < futures; ++f) {
      std::vector<int> fx = word_symbols(f, a, len);
      WordCode window = h;
      double prob = 1.0;
      for (int x : fx) {
        if (!cond.observed(window)) {
          prob = 0.0;
          break;
        }
        prob *= cond.probability(window, x);
        if (prob == 0.0) break;
        window = (window * a + x) % hcount;
      }
      amp(static_cast<Eigen::Index>(f)) = std::sqrt(prob);
    }
    double norm = amp.norm();
    if (norm == 0.0) throw InsufficientDataError("history " + word_to_string(h, a, len) + " has no observed future");
    amp /= norm;
    out.states.push_back(amp);
    out.weights.push_back(cond.history_weight(h) / cond.total_weight());
    out.labels.push_back(word_to_string(h, a, len));
    out.emission.push_back(cond.row(h));
    std::vector<int> succ(a, -1);
    for (int x = 0; x < a; ++x) {
      WordCode next = len == 0 ? 0 : (h * a + x) % hcount;
      succ[x] = index_of[next];
    }
    out.successor.push_back(succ);
  }
  return out;
}

MemoryStateSet perturbed_coin_memory_states(double p) {
  return infer_memory_states(perturbed_coin_exact_conditional(p, 1), 1);
}

std::pair<MemoryStateSet, MergeReport> merge_states(const MemoryStateSet& set, std::size_t n_process,
                                                    std::optional<double> delta_override) {
  set.validate();
  if (n_process == 0) throw ValidationError("process length must be positive");
  const double delta = delta_override.value_or(merge_tolerance(n_process));
  if (!(delta >= 0.0 && delta < 1.0)) throw ValidationError("merge tolerance must lie in [0, 1)");

  const std::size_t m = set.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return set.weights[i] > set.weights[j]; });

  std::vector<std::vector<std::size_t>> members;
  std::vector<int> cluster_of(m, -1);
  for (std::size_t i : order) {
    int found = -1;
    for (std::size_t c = 0; c < members.size(); ++c) {
      if (std::abs(set.states[members[c][0]].dot(set.states[i])) >= 1.0 - delta) {
        found = static_cast<int>(c);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(members.size());
      members.emplace_back();
    }
    members[found].push_back(i);
    cluster_of[i] = found;
  }

  const int a = set.alphabet_size;
  MemoryStateSet merged;
  merged.alphabet_size = a;
  merged.future_length = set.future_length;
  MergeReport report;
  report.delta = delta;
  for (std::size_t c = 0; c < members.size(); ++c) {
    const std::size_t rep = members[c][0];
    double weight = 0.0;
    std::vector<double> emission(a, 0.0);
    std::vector<std::string> labels;
    for (std::size_t i : members[c]) {
      weight += set.weights[i];
      for (int x = 0; x < a; ++x) emission[x] += set.weights[i] * set.emission[i][x];
      labels.push_back(set.labels[i]);
    }
    for (double& e : emission) e = weight > 0.0 ? e / weight : 1.0 / a;

    std::vector<int> succ(a, -1);
    for (int x = 0; x < a; ++x) {
      std::map<int, double> votes;
      for (std::size_t i : members[c]) {
        int s = set.successor[i][x];
        if (s < 0 || set.emission[i][x] <= 0.0) continue;
        votes[cluster_of[s]] += set.weights[i];
      }
      if (votes.empty()) continue;
      auto best = std::max_element(votes.begin(), votes.end(),
                                   [](const auto& l, const auto& r) { return l.second < r.second; });
      succ[x] = best->first;
      if (votes.size() > 1)
        report.warnings.push_back("non-unifilar merge: cluster " + set.labels[rep] + " on symbol " +
                                  std::to_string(x) + " maps to " + std::to_string(votes.size()) +
                                  " clusters; kept the majority-weight successor");
    }

    merged.states.push_back(set.states[rep]);
    merged.weights.push_back(weight);
    merged.labels.push_back(set.labels[rep]);
    merged.emission.push_back(emission);
    merged.successor.push_back(succ);
    report.clusters.push_back(labels);
  }
  report.gram = merged.gram().cwiseAbs().cwiseMin(1.0);
  return {merged, report};
}

Matrix EpsilonMachine::state_transition_matrix() const {
  const auto m = static_cast<Eigen::Index>(num_states());
  Matrix t = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (int x = 0; x < alphabet_size; ++x)
      if (next[i][x] >= 0) t(i, next[i][x]) += probability[i][x];
  return t;
}

void EpsilonMachine::validate() const {
  const std::size_t m = num_states();
  if (m == 0) throw ValidationError("epsilon machine has no states");
  if (probability.size() != m || stationary.size() != m) throw ValidationError("epsilon machine fields inconsistent");
  for (std::size_t i = 0; i < m; ++i) {
    double total = 0.0;
    for (int x = 0; x < alphabet_size; ++x) {
      if (probability[i][x] < 0.0) throw ValidationError("negative transition probability");
      if (probability[i][x] > 0.0 && (next[i][x] < 0 || next[i][x] >= static_cast<int>(m)))
        throw ValidationError("transition with positive probability has no successor state");
      total += probability[i][x];
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("outgoing probabilities do not sum to 1");
  }
  Eigen::Map<const Vector> pi(stationary.data(), static_cast<Eigen::Index>(m));
  if (max_abs(state_transition_matrix().transpose() * pi - pi) > 1e-10)
    throw NumericalError("stationary vector is not a fixed point");
}

EpsilonMachine build_epsilon_machine(const MemoryStateSet& merged) {
  merged.validate();
  EpsilonMachine machine;
  machine.alphabet_size = merged.alphabet_size;
  machine.next = merged.successor;
  machine.probability = merged.emission;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    double total = 0.0;
    for (int x = 0; x < merged.alphabet_size; ++x) {
      if (merged.successor[i][x] < 0) machine.probability[i][x] = 0.0;
      total += machine.probability[i][x];
    }
    if (total <= 0.0) throw InsufficientDataError("state " + merged.labels[i] + " has no observed transition");
    for (double& p : machine.probability[i]) p /= total;
  }

  const Matrix t = machine.state_transition_matrix();
  const auto m = t.rows();
  Matrix a(m + 1, m);
  a.topRows(m) = t.transpose() - Matrix::Identity(m, m);
  a.row(m).setOnes();
  Vector b = Vector::Zero(m + 1);
  b(m) = 1.0;
  Vector pi = a.completeOrthogonalDecomposition().solve(b);
  if (max_abs(a * pi - b) > 1e-10) throw NumericalError("no stationary distribution found");
  for (Eigen::Index i = 0; i < m; ++i) pi(i) = std::max(pi(i), 0.0);
  pi /= pi.sum();
  machine.stationary.assign(pi.data(), pi.data() + m);
  machine.validate();
  return machine;
}

EpsilonMachine perturbed_coin_machine(double p) {
  validate(PerturbedCoinParams{p, 0, 0});
  EpsilonMachine machine;
  machine.alphabet_size = 2;
  if (p == 0.5) {
    machine.next = {{0, 0}};
    machine.probability = {{0.5, 0.5}};
    machine.stationary = {1.0};
    return machine;
  }
  machine.next = {{0, 1}, {0, 1}};
  machine.probability = {{p, 1.0 - p}, {1.0 - p, p}};
  machine.stationary = {0.5, 0.5};
  return machine;
}

double shannon_entropy_bits(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

double classical_statistical_complexity(const EpsilonMachine& machine) {
  machine.validate();
  return shannon_entropy_bits(machine.stationary);
}

double quantum_statistical_memory(const MemoryStateSet& set) {
  set.validate();
  const auto m = static_cast<Eigen::Index>(set.size());
  Matrix k = set.gram();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) k(i, j) *= std::sqrt(set.weights[i] * set.weights[j]);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(k, Eigen::EigenvaluesOnly);
  std::vector<double> lambda(eig.eigenvalues().data(), eig.eigenvalues().data() + m);
  for (double& l : lambda)
    if (l < 1e-12) l = 0.0;
  return shannon_entropy_bits(lambda);
}

double perturbed_coin_cq(double p) {
  validate(PerturbedCoinParams{p, 0, 0});
  const double s = std::sqrt(p * (1.0 - p));
  const double lambda[2] = {0.5 + s, std::max(0.5 - s, 0.0)};
  return shannon_entropy_bits(lambda);
}

AdvantageRegion memory_advantage_region(double n_mc, double n_classical, double c_mu) {
  if (!(n_mc > 0.0 && n_classical > 0.0 && c_mu > 0.0))
    throw ValidationError("memory advantage inputs must be positive");
  AdvantageRegion region;
  region.threshold = n_classical * c_mu / n_mc;
  if (region.threshold >= 1.0) {
    region.full_range = true;
    return region;
  }
  // C_q falls monotonically from 1 at p = 0 to 0 at p = 1/2 and is symmetric.
  auto crossing = [&](double outside, double inside) {
    while (std::abs(inside - outside) > 1e-9) {
      double mid = 0.5 * (outside + inside);
      (perturbed_coin_cq(mid) <= region.threshold ? inside : outside) = mid;
    }
    return inside;
  };
  region.p_low = crossing(0.0, 0.5);
  region.p_high = crossing(1.0, 0.5);
  return region;
}

}  // namespace qmpec
