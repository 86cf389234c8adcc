// Copyright 2026 The mmlab Authors.
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

#include "mmlab/error.h"

#include <fmt/format.h>

namespace mmlab {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch:
      return "dimension mismatch";
    case ErrorCode::kEmptyDataset:
      return "empty dataset";
    case ErrorCode::kIndexOutOfRange:
      return "index out of range";
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kNoClosedForm:
      return "no closed form";
    case ErrorCode::kSolverDidNotConverge:
      return "solver did not converge";
    case ErrorCode::kUndefinedBound:
      return "undefined bound";
    case ErrorCode::kValidation:
      return "validation error";
    case ErrorCode::kIo:
      return "io error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code), message_(message) {}

Error& Error::WithResidual(double residual) {
  residual_ = residual;
  message_ += fmt::format(" (residual {:.3e})", residual);
  return *this;
}

Error& Error::WithIteration(long iteration) {
  iteration_ = iteration;
  message_ = fmt::format("iteration {}: {}", iteration, message_);
  return *this;
}

}  // namespace mmlab
