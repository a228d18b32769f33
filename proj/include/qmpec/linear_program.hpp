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

#ifndef QMPEC_LINEAR_PROGRAM_HPP
#define QMPEC_LINEAR_PROGRAM_HPP

#include "qmpec/linalg.hpp"

namespace qmpec {

struct LinearProgramResult {
  Vector x;
  double objective = 0.0;
  int pivots = 0;
};

// min c.x subject to a x = b, x >= 0, by the two-phase tableau simplex with
// Bland's rule. Rows of a should be linearly independent. Throws
// NumericalError when the program is infeasible or unbounded.
LinearProgramResult solve_standard_lp(const Matrix& a, const Vector& b, const Vector& c);

struct L1Solution {
  Vector x;
  double residual = 0.0;  // max |a x - b|
  bool unique = false;    // a has full column rank
};

// min ||x||_1 subject to a x = b. Throws SpanDeficiencyError when b is not in
// the column span of a to within tolerance.
L1Solution minimize_l1(const Matrix& a, const Vector& b, double tolerance = 1e-8);

}  // namespace qmpec

#endif  // QMPEC_LINEAR_PROGRAM_HPP
