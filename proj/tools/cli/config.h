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

#ifndef MMLAB_TOOLS_CLI_CONFIG_H_
#define MMLAB_TOOLS_CLI_CONFIG_H_

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "mmlab/objectives.h"
#include "mmlab/optimizers.h"

namespace mmlab::cli {

// Initial point: either a constant fill or an explicit vector.
struct InitSpec {
  double fill = 0.0;
  std::vector<double> values;

  Vector Resolve(int dim) const;
};

// Fixed-schema JSON experiment description. Unknown keys are rejected.
//
//   {
//     "name": "run",
//     "objective": {"kind": "scsc", "mu": 0.1},
//     "d": 50, "n": 1000, "seeds": [1, 2],
//     "algorithm": {"family": "gda", "mode": "stochastic",
//                   "step_w": "constant:0.02", "step_theta": 0.02,
//                   "eta": "constant:0.02"},
//     "T": 20000, "stride": 10,
//     "rho_w": 100, "rho_theta": null,
//     "constants": {"L": 1, "L_w": 1, "ell": 1},
//     "w0": 0.0, "theta0": [0, 0, ...],
//     "replace_index": 0,
//     "out": "results"
//   }
struct ExperimentConfig {
  std::string name = "run";
  ObjectiveKind objective = ObjectiveKind::kScScQuadratic;
  double mu = 0.0;
  int d = 1;
  int n = 1;
  std::vector<std::uint64_t> seeds = {1};
  AlgorithmSpec algorithm;
  long T = 0;
  long stride = 1;
  double rho_w = kUnbounded;
  double rho_theta = kUnbounded;
  std::optional<Constants> constants;
  InitSpec w0;
  InitSpec theta0;
  int replace_index = 0;
  std::string out = ".";

  // Normalized form with every default filled in; hashed into outputs.
  nlohmann::json canonical;

  Objective MakeObjective() const;

  // Canonical form of one run: `seeds` replaced by the single `seed`.
  nlohmann::json RunCanonical(std::uint64_t seed) const;
};

// Throws Error(kValidation) naming the offending key.
ExperimentConfig ParseConfig(const nlohmann::json& j);
ExperimentConfig LoadConfig(const std::string& path);

}  // namespace mmlab::cli

#endif  // MMLAB_TOOLS_CLI_CONFIG_H_
