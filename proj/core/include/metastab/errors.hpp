// Copyright 2026 The metastab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
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
#include <string_view>

#include "metastab/types.hpp"

namespace metastab {

enum class ErrorCode {
  kEvaluation,
  kContractViolation,
  kNumericFailure,
  kPreconditionViolation,
  kDegenerateCriticalPoint,
  kInconsistentLevel,
  kGateNotFound,
  kUnreachableTarget,
  kModelInconsistency,
  kGuardViolation,
  kUnreliableEstimate,
  kConfig,
};

std::string_view to_string(ErrorCode code);

/// Base error for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Non-finite potential or gradient at a point.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, Vector point);
  const Vector& point() const noexcept { return point_; }

 private:
  Vector point_;
};

/// A trajectory left the spatial guard ball.
class GuardViolation : public Error {
 public:
  GuardViolation(const std::string& what, std::size_t steps);
  /// Number of completed steps before the offending one.
  std::size_t steps() const noexcept { return steps_; }

 private:
  std::size_t steps_;
};

}  // namespace metastab
