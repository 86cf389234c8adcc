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

#ifndef MMLAB_TOOLS_CLI_PARALLEL_H_
#define MMLAB_TOOLS_CLI_PARALLEL_H_

#include <functional>

namespace mmlab::cli {

// min(tasks, MMLAB_WORKERS or the hardware concurrency), at least 1.
// Throws Error(kValidation) when MMLAB_WORKERS is not a positive integer.
int WorkerCount(int tasks);

// Runs fn(0..count-1) on WorkerCount(count) threads. If any call throws,
// the exception of the lowest failing index is rethrown after all workers
// have stopped.
void ParallelFor(int count, const std::function<void(int)>& fn);

}  // namespace mmlab::cli

#endif  // MMLAB_TOOLS_CLI_PARALLEL_H_
