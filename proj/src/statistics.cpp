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

#include "qmpec/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "qmpec/error.hpp"

namespace qmpec {

double sigma_mc(double cost, double runs, int steps) {
  if (!(cost > 0.0) || !(runs > 0.0) || steps < 1) throw ValidationError("sigma_mc needs positive arguments");
  return std::pow(cost, steps) / std::sqrt(runs);
}

double distribution_fidelity(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = std::max(p.size(), q.size());
  double f = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    if (a < 0.0 || b < 0.0) throw ValidationError("fidelity needs non-negative distributions");
    f += std::sqrt(a * b);
  }
  return f;
}

double predict_fidelity_perturbation(double cost, int steps, double runs, std::span<const double> exact) {
  if (!(cost > 0.0) || !(runs > 0.0) || steps < 1) throw ValidationError("fidelity prediction needs positive arguments");
  double inv = 0.0;
  for (double p : exact) {
    if (!(p > 0.0)) throw ValidationError("fidelity prediction is undefined for zero-probability outcomes");
    inv += 1.0 / p;
  }
  return std::pow(cost, 2 * steps) / (8.0 * runs) * inv;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("slope needs two or more matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("log-log slope needs positive values");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw ValidationError("slope needs distinct x values");
  return (n * sxy - sx * sy) / den;
}

double mean(std::span<const double> v) {
  if (v.empty()) throw ValidationError("mean of empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v) {
  if (v.size() < 2) throw ValidationError("standard deviation needs two or more values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace qmpec
