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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "qmpec/error.hpp"
#include "qmpec/process.hpp"

using namespace qmpec;

namespace {

SymbolSequence from_string(const std::string& s) {
  std::vector<int> v;
  for (char c : s) v.push_back(c - '0');
  return SymbolSequence(v, 2);
}

SymbolSequence iid_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> v(n);
  for (int& x : v) x = coin(rng) ? 1 : 0;
  return SymbolSequence(v, 2);
}

SymbolSequence period_two(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i % 2);
  return SymbolSequence(v, 2);
}

}  // namespace

TEST_CASE("word packing") {
  CHECK(word_count(2, 3) == 8);
  CHECK(word_count(3, 2) == 9);
  CHECK(word_to_string(5, 2, 3) == "101");
  CHECK(word_symbols(5, 2, 3) == std::vector<int>{1, 0, 1});
  CHECK(word_to_string(0, 2, 0) == "");
}

TEST_CASE("perturbed coin edge cases") {
  SUBCASE("p = 0 alternates") {
    auto seq = generate_perturbed_coin({0.0, 3, 0}, 6);
    CHECK(seq.symbols() == std::vector<int>{1, 0, 1, 0, 1, 0});
  }
  SUBCASE("p = 1 repeats the state") {
    auto seq = generate_perturbed_coin({1.0, 3, 1}, 5);
    CHECK(seq.symbols() == std::vector<int>{1, 1, 1, 1, 1});
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(generate_perturbed_coin({1.5, 0, 0}, 5), ValidationError);
    CHECK_THROWS_AS(generate_perturbed_coin({0.2, 0, 2}, 5), ValidationError);
  }
}

TEST_CASE("perturbed coin flip fraction") {
  const std::size_t n = 100000;
  auto seq = generate_perturbed_coin({0.2, 17, 0}, n);
  REQUIRE(seq.size() == n);
  // The first symbol comes from state 0, so flips start at index 0.
  std::size_t flips = seq[0] == 1 ? 1 : 0;
  for (std::size_t i = 1; i < n; ++i) flips += seq[i] != seq[i - 1];
  const double frac = static_cast<double>(flips) / n;
  CHECK(std::abs(frac - 0.8) < 0.01);
}

TEST_CASE("generation is deterministic per seed") {
  auto a = generate_perturbed_coin({0.3, 99, 0}, 1000);
  auto b = generate_perturbed_coin({0.3, 99, 0}, 1000);
  auto c = generate_perturbed_coin({0.3, 100, 0}, 1000);
  CHECK(a.symbols() == b.symbols());
  CHECK(a.symbols() != c.symbols());
}

TEST_CASE("conditional distribution small sequences") {
  auto constant = conditional_distribution(from_string("00000"), 1);
  CHECK(constant.probability(0, 0) == 1.0);
  CHECK_FALSE(constant.observed(1));

  auto alternating = conditional_distribution(from_string("010101"), 1);
  CHECK(alternating.probability(0, 1) == 1.0);
  CHECK(alternating.probability(1, 0) == 1.0);
  CHECK(alternating.total_weight() == 5.0);
}

TEST_CASE("conditional distribution of the p=0.2 coin") {
  auto seq = generate_perturbed_coin({0.2, 5, 0}, 100000);
  auto cond = conditional_distribution(seq, 1);
  for (int s = 0; s < 2; ++s) CHECK(std::abs(cond.probability(s, s) - 0.2) < 0.01);
}

TEST_CASE("conditional distribution rejects short sequences") {
  CHECK_THROWS_AS(conditional_distribution(from_string("01"), 3), ValidationError);
}

TEST_CASE("exact conditional table") {
  auto exact = perturbed_coin_exact_conditional(0.2, 2);
  for (WordCode h = 0; h < 4; ++h) {
    const int last = static_cast<int>(h & 1);
    const int first = static_cast<int>(h >> 1);
    CHECK(exact.probability(h, last) == doctest::Approx(0.2));
    CHECK(exact.history_weight(h) == doctest::Approx(0.5 * (first == last ? 0.2 : 0.8)));
  }
}

TEST_CASE("effective Markov order") {
  SUBCASE("memoryless bits") {
    auto est = effective_markov_order(iid_bits(100000, 3), 0.05, 4);
    CHECK(est.order == 0);
    CHECK(est.converged);
  }
  SUBCASE("p=0.2 coin") {
    auto est = effective_markov_order(generate_perturbed_coin({0.2, 9, 0}, 100000), 0.05, 4);
    CHECK(est.order == 1);
    CHECK(est.converged);
  }
  SUBCASE("period two") {
    auto est = effective_markov_order(period_two(1000), 0.05, 4);
    CHECK(est.order == 1);
  }
  SUBCASE("distances fall below the tolerance at the reported order") {
    auto est = effective_markov_order(generate_perturbed_coin({0.2, 9, 0}, 100000), 0.05, 4);
    REQUIRE(est.distances.size() > static_cast<std::size_t>(est.order));
    CHECK(est.distances[est.order] <= 0.05);
    for (int r = 0; r < est.order; ++r) CHECK(est.distances[r] > 0.05);
  }
}

TEST_CASE("sequence text roundtrip") {
  auto seq = generate_perturbed_coin({0.4, 1, 0}, 257);
  std::stringstream io;
  write_sequence(io, seq);
  auto back = read_sequence(io, 2);
  CHECK(back.symbols() == seq.symbols());
}
