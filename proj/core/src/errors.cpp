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

#include "metastab/errors.hpp"

#include <utility>

namespace metastab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEvaluation: return "evaluation";
    case ErrorCode::kContractViolation: return "contract-violation";
    case ErrorCode::kNumericFailure: return "numeric-failure";
    case ErrorCode::kPreconditionViolation: return "precondition-violation";
    case ErrorCode::kDegenerateCriticalPoint: return "degenerate-critical-point";
    case ErrorCode::kInconsistentLevel: return "inconsistent-level";
    case ErrorCode::kGateNotFound: return "gate-not-found";
    case ErrorCode::kUnreachableTarget: return "unreachable-target";
    case ErrorCode::kModelInconsistency: return "model-inconsistency";
    case ErrorCode::kGuardViolation: return "guard-violation";
    case ErrorCode::kUnreliableEstimate: return "unreliable-estimate";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

EvaluationError::EvaluationError(const std::string& what, Vector point)
    : Error(ErrorCode::kEvaluation, what), point_(std::move(point)) {}

GuardViolation::GuardViolation(const std::string& what, std::size_t steps)
    : Error(ErrorCode::kGuardViolation, what), steps_(steps) {}

}  // namespace metastab
