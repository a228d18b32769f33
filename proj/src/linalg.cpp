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

#include "qmpec/linalg.hpp"

#include "qmpec/error.hpp"

namespace qmpec {

double max_abs_diff_up_to_phase(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("matrix shapes differ");
  if (a.size() == 0) return 0.0;
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  Complex phase(1.0, 0.0);
  if (std::abs(a(r, c)) > 0.0 && std::abs(b(r, c)) > 0.0) {
    Complex z = a(r, c) / b(r, c);
    phase = z / std::abs(z);
  }
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace qmpec
