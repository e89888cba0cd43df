/* Copyright 2026 The qfid Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef QFID_ERROR_HPP_
#define QFID_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qfid {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not fit the operation (non-square, A.cols != B.rows, ...).
class ShapeError : public Error {
 public:
  using Error::Error;
};

// An input violates a domain invariant: non-unitary gate, incomplete Kraus
// set, parameter out of range, malformed subspace selector.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A tensor power or similar construction would exceed the memory budget.
class BudgetError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Post-selection with vanishing acceptance probability.
class DegenerateAcceptanceError : public Error {
 public:
  using Error::Error;
};

// An iterative numerical method failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfid

#endif  // QFID_ERROR_HPP_
