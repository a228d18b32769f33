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

#ifndef QMPEC_ERROR_HPP
#define QMPEC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qmpec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed config, out-of-range parameters, too little data.
// The command line tool maps these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A computation broke down: singular systems, non-unitary inputs, residuals
// beyond tolerance. Exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SpanDeficiencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularTomographyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qmpec

#endif  // QMPEC_ERROR_HPP
