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

#ifndef QMPEC_STATISTICS_HPP
#define QMPEC_STATISTICS_HPP

#include <span>
#include <vector>

namespace qmpec {

// C^t / sqrt(N).
double sigma_mc(double cost, double runs, int steps);

// sum_i sqrt(p_i q_i); the shorter vector is padded with zeros.
double distribution_fidelity(std::span<const double> p, std::span<const double> q);

// C^{2t} / (8 N) * sum_i 1 / p_i. Throws ValidationError on a zero entry.
double predict_fidelity_perturbation(double cost, int steps, double runs, std::span<const double> exact);

// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> v);
// Sample standard deviation (n - 1 denominator).
double sample_std(std::span<const double> v);

}  // namespace qmpec

#endif  // QMPEC_STATISTICS_HPP
