// Copyright 2026 The rodfiter Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rodfiter {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The fit matrix is rank-deficient (e.g. duplicate sample instants).
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// t_N * sup|omega| >= 2: the Picard iteration is not guaranteed to converge.
class ConvergenceConditionViolated : public Error {
 public:
  ConvergenceConditionViolated(double product, std::size_t interval = 0)
      : Error("convergence condition violated: t_N*sup|omega| = " +
              std::to_string(product) + " >= 2"),
        product_(product),
        interval_(interval) {}

  double product() const { return product_; }
  std::size_t interval() const { return interval_; }

 private:
  double product_;
  std::size_t interval_;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Incremental rotation angle reached pi; no finite Rodrigues vector exists.
class SingularRodriguesError : public Error {
 public:
  using Error::Error;
};

class InputFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace rodfiter
