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

#ifndef MMLAB_ERROR_H_
#define MMLAB_ERROR_H_

#include <optional>
#include <stdexcept>
#include <string>

namespace mmlab {

enum class ErrorCode {
  kDimensionMismatch,
  kEmptyDataset,
  kIndexOutOfRange,
  kInvalidArgument,
  kNoClosedForm,
  kSolverDidNotConverge,
  kUndefinedBound,
  kValidation,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the library. Solver failures carry the residual
// they stopped at; failures inside an optimizer run carry the iteration.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  const char* what() const noexcept override { return message_.c_str(); }
  ErrorCode code() const { return code_; }
  const std::optional<double>& residual() const { return residual_; }
  const std::optional<long>& iteration() const { return iteration_; }

  Error& WithResidual(double residual);
  Error& WithIteration(long iteration);

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<double> residual_;
  std::optional<long> iteration_;
};

}  // namespace mmlab

#endif  // MMLAB_ERROR_H_
