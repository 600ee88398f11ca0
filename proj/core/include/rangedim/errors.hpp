// Copyright 2026 The rangedim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RANGEDIM_ERRORS_HPP
#define RANGEDIM_ERRORS_HPP

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace rangedim {

/// Shortest readable rendering of a number for error messages.
inline std::string describe(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix or composite space exceeds the configured size limits, or is empty.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes are incompatible (non-square, mismatched sizes, wrong lengths).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input expected to be Hermitian is not, beyond tolerance.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Input expected to be positive semidefinite has a negative eigenvalue.
class NegativityError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside its mathematical domain (zero dimension, bad rank).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A construction was called outside the dimension ordering it handles.
class OrderingError : public Error {
 public:
  using Error::Error;
};

class AmplitudeError : public Error {
 public:
  using Error::Error;
};

/// A constructor or dispatcher failed to produce the promised state.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A matrix violates a DensityOperator invariant. `invariant()` names which.
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace rangedim

#endif  // RANGEDIM_ERRORS_HPP
