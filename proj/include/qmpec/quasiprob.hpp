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

#ifndef QMPEC_QUASIPROB_HPP
#define QMPEC_QUASIPROB_HPP

#include <random>
#include <span>
#include <vector>

#include "qmpec/gst.hpp"
#include "qmpec/ptm.hpp"

namespace qmpec {

inline constexpr double kDecompositionTolerance = 1e-8;

struct QuasiprobDecomposition {
  std::vector<double> coefficients;
  double cost = 0.0;        // sum |q_i|
  std::vector<double> cdf;  // cumulative |q_i| / cost, last entry 1
  double residual = 0.0;

  static QuasiprobDecomposition from_coefficients(std::vector<double> q, double residual = 0.0);

  std::size_t size() const { return coefficients.size(); }
  int sign(std::size_t i) const { return coefficients[i] < 0.0 ? -1 : 1; }
  std::size_t sample(std::mt19937_64& rng) const;
  // Index for a uniform draw u in [0, 1).
  std::size_t index_for(double u) const;
};

// L1-minimal q with sum_i q_i B_i = target.
QuasiprobDecomposition decompose_quasiprob(const PauliTransferMatrix& target,
                                           std::span<const PauliTransferMatrix> basis);

// Coefficients over the GST preparations (columns of T) reproducing |0..0>,
// and over the reconstructed observables (rows of g T^{-1}) reproducing
// Z (x) ... (x) Z.
struct StateMeasurementDecomposition {
  QuasiprobDecomposition rho;
  QuasiprobDecomposition measurement;
};

StateMeasurementDecomposition decompose_state_measurement(const GstDataset& gst);

// Measuring observable j and reporting outcome bit x = (s == -1) xor flipped.
struct MeasurementVariant {
  int observable = 0;
  bool flipped = false;
  double coefficient = 0.0;
};

// Splits a Z-observable decomposition d into signed outcome-relabelling
// variants whose weighted indicator is an unbiased estimate of both
// projectors (I +- Z)/2. The sampler carries the variant coefficients.
struct MeasurementScheme {
  std::vector<MeasurementVariant> variants;
  QuasiprobDecomposition sampler;
};

MeasurementScheme measurement_scheme(const QuasiprobDecomposition& observable_decomposition);

}  // namespace qmpec

#endif  // QMPEC_QUASIPROB_HPP
