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

#ifndef MMLAB_TOOLS_CLI_COMMANDS_H_
#define MMLAB_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "mmlab/dataset.h"
#include "mmlab/objectives.h"
#include "mmlab/optimizers.h"

namespace mmlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;

// Generalization-risk bound as a function of the iteration count.
struct BoundCurve {
  std::string name;  // empty when no bound applies
  std::function<double(long)> at;

  explicit operator bool() const { return !name.empty(); }
};

// Picks the bound matching the objective's convexity class and the
// algorithm: the strongly-convex bound, the linear-in-T proximal bound,
// the geometric bilinear GDA series, or the decaying-step nonconvex bound.
BoundCurve GenRiskBound(const Objective& obj, const AlgorithmSpec& spec,
                        const Constants& constants, long n);

// Largest sample norm; the z-radius used for analytic region constants.
double MaxSampleNorm(const Dataset& data);

const std::vector<std::string>& FigureIds();

// Fixed experiment behind one reproduction figure.
struct FigureSetup {
  std::string id;
  Objective objective;
  Dataset data;
  AlgorithmSpec spec;
  Constants constants;
  long T = 0;
  long stride = 1;
  Vector w0;
  Vector theta0;
  Vector population_mean;
  std::uint64_t seed = 0;
  BoundCurve bound;
};

// Throws Error(kValidation) for an unknown id.
FigureSetup MakeFigureSetup(const std::string& id, std::uint64_t seed);

// Subcommands. They throw mmlab::Error; Main maps errors to exit codes.
void CmdReproduce(const std::string& figure_id, std::uint64_t seed,
                  const std::string& out_dir, std::ostream& out);
void CmdRun(const std::string& config_path, std::ostream& out);
void CmdBounds(const std::string& theorem, const std::string& params,
               std::ostream& out);
void CmdStability(const std::string& config_path, std::ostream& out);

// Entry point: 0 on success, 2 on validation errors, 1 on runtime errors.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace mmlab::cli

#endif  // MMLAB_TOOLS_CLI_COMMANDS_H_
