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

#ifndef MMLAB_STABILITY_H_
#define MMLAB_STABILITY_H_

#include <cstdint>
#include <functional>
#include <ostream>
#include <utility>
#include <vector>

#include "mmlab/dataset.h"
#include "mmlab/objectives.h"
#include "mmlab/optimizers.h"
#include "mmlab/oracles.h"

namespace mmlab {

// Divergence between two coupled runs on neighbouring datasets.
struct StabilityTrace {
  std::vector<long> t;
  std::vector<double> delta_w;
  std::vector<double> delta_theta;
  std::vector<double> delta;
  int replaced_index = -1;  // -1 when the datasets are identical
  std::uint64_t seed = 0;

  std::size_t size() const { return t.size(); }
};

struct GenRiskCurve {
  std::vector<long> t;
  std::vector<double> gen_risk;
  std::uint64_t seed = 0;
  AlgorithmSpec spec;
};

Dataset MakeNeighborDataset(const Dataset& data, int index,
                            const Vector& z_new);

// Runs `spec` on both datasets from the same start. Stochastic runs share one
// index stream drawn from `seed`; options.indices, if set, overrides it.
StabilityTrace PairedRun(const AlgorithmSpec& spec, const Objective& obj,
                         const Dataset& data, const Dataset& neighbor,
                         const Vector& w0, const Vector& theta0, long T,
                         std::uint64_t seed, const RunOptions& options = {});

GenRiskCurve GenRiskCurveFromRun(const Trajectory& traj, const Objective& obj,
                                 const Dataset& data,
                                 const Vector& population_mean,
                                 const AlgorithmSpec& spec);

GenRiskCurve MakeGenRiskCurve(const AlgorithmSpec& spec, const Objective& obj,
                              const Dataset& data,
                              const Vector& population_mean, const Vector& w0,
                              const Vector& theta0, long T, std::uint64_t seed,
                              long stride);

using UpdateMap = std::function<Iterate(const Iterate&)>;
using IterateSampler = std::function<Iterate(Rng&)>;

// Largest |G(u) - G(u')| / |u - u'| over num_pairs pairs. Half of the pairs
// are independent draws from `sampler`, half are local perturbations of a
// draw (relative scale 1e-3) mapped back through `project` when given;
// pairs closer than 1e-8 are redrawn.
double EstimateExpansivity(const UpdateMap& map, const IterateSampler& sampler,
                           long num_pairs, std::uint64_t seed,
                           const UpdateMap& project = {});

struct Probe {
  Vector z;
  Vector theta;
};

// z from N(0, I), theta uniform on the feasible theta-ball (N(0, I) if the
// ball is unbounded).
std::vector<Probe> MakeProbes(const Objective& obj, int count,
                              std::uint64_t seed);

struct Replacement {
  int index = 0;
  Vector z_new;
};

struct UniformStabilityEstimate {
  // max over probes and replacements of |mean over seeds of
  // f(w_T, theta; z) - f(w'_T, theta; z)|. The absolute value covers both
  // orderings of the neighbouring pair.
  double estimate = 0.0;
  double estimate_se = 0.0;
  // L_w times the mean of delta_w at T over replacements and seeds.
  double lipschitz_bound = 0.0;
  double lipschitz_bound_se = 0.0;
};

UniformStabilityEstimate EstimateUniformStability(
    const AlgorithmSpec& spec, const Objective& obj, const Dataset& data,
    const std::vector<Probe>& probes, const Vector& w0, const Vector& theta0,
    long T, const std::vector<Replacement>& replacements,
    const std::vector<std::uint64_t>& seeds);

void WriteStabilityTraceCsv(const StabilityTrace& trace, std::ostream& out);
void WriteGenRiskCurveCsv(const GenRiskCurve& curve, std::ostream& out);

}  // namespace mmlab

#endif  // MMLAB_STABILITY_H_
