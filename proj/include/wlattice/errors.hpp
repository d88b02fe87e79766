// Copyright 2026 The wlattice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace wlattice {

/// Bad input parameter. `field()` names the offending parameter.
class ValidationError : public std::invalid_argument {
public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Operands of incompatible size (state vs. coupling matrix, etc).
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed or produced output outside its tolerance
/// envelope. `residual()` carries the offending magnitude.
class NumericError : public std::runtime_error {
public:
  NumericError(const std::string& message, double residual)
      : std::runtime_error(message), residual_(residual) {}

  [[nodiscard]] double residual() const noexcept { return residual_; }

private:
  double residual_;
};

}  // namespace wlattice
