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

#ifndef MMLAB_OPTIMIZERS_H_
#define MMLAB_OPTIMIZERS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mmlab/dataset.h"
#include "mmlab/objectives.h"

namespace mmlab {

// Stepsize as a function of the 1-indexed iteration t: either a constant
// alpha or c / t. Serialized as "constant:<alpha>" or "inverse_t:<c>".
class Schedule {
 public:
  enum class Kind { kConstant, kInverseT };

  static Schedule Constant(double alpha);
  static Schedule InverseT(double c);
  static Schedule Parse(std::string_view text);

  Kind kind() const { return kind_; }
  double value() const { return value_; }
  double At(long t) const;
  std::string ToString() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  Schedule(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

enum class Family { kGda, kGdmax, kPpm, kPpmax };
enum class Mode { kFullBatch, kStochastic };

std::string FamilyName(Family family);
Family ParseFamily(std::string_view name);
std::string ModeName(Mode mode);
Mode ParseMode(std::string_view name);

// step_theta is ignored by GDmax/PPmax; eta is used only by PPM/PPmax and
// the stepsizes only by GDA/GDmax.
struct AlgorithmSpec {
  Family family = Family::kGda;
  Mode mode = Mode::kFullBatch;
  Schedule step_w = Schedule::Constant(0.02);
  Schedule step_theta = Schedule::Constant(0.02);
  Schedule eta = Schedule::Constant(0.02);

  // "gda", "sgda", "ppm", "sppm", ...
  std::string ShortName() const;
};

struct Iterate {
  Vector w;
  Vector theta;
};

struct InnerSolverOptions {
  double tolerance = 1e-9;  // on the projected-gradient norm
  long max_iterations = 100000;
};

// Damped fixed-point iteration used by the proximal steps when no exact
// solve is available.
struct ProxSolverOptions {
  double tolerance = 1e-10;
  long max_iterations = 10000;
  double damping = 0.5;
};

// Projected gradient ascent on theta; used for objectives without a
// closed-form maximizer. Throws kSolverDidNotConverge with the final
// gradient-mapping norm as residual.
InnerMax NumericInnerMax(const Objective& obj, const Vector& w, const Vector& z,
                         const InnerSolverOptions& options = {});

// All step functions take z as either a single sample or a dataset mean
// (the averaged objective, see objectives.h). Iterates are projected onto
// the objective's feasible balls after the update.

Iterate GdaStep(const Objective& obj, const Vector& w, const Vector& theta,
                const Vector& z, double alpha_w, double alpha_theta);

// Returns (w', theta*) where theta* maximizes f(w, . ; z) and
// w' = proj(w - alpha_w * grad_w f(w, theta*)).
Iterate GdmaxStep(const Objective& obj, const Vector& w, const Vector& z,
                  double alpha_w, const InnerSolverOptions& options = {});

// Saddle point of f(w~, t~) + |w~ - w|^2/(2 eta) - |t~ - theta|^2/(2 eta),
// then projected. Linear-quadratic objectives are solved exactly.
Iterate PpmStep(const Objective& obj, const Vector& w, const Vector& theta,
                const Vector& z, double eta,
                const ProxSolverOptions& options = {});

// Proximal step on f_max: w' = proj(argmin f_max(v) + |v - w|^2/(2 eta)),
// returned with theta* = argmax f(w', . ; z).
Iterate PpmaxStep(const Objective& obj, const Vector& w, const Vector& z,
                  double eta, const ProxSolverOptions& options = {});

// Residual of the unprojected proximal optimality system at (w', theta'):
// |w' - w + eta grad_w f| + |theta' - theta - eta grad_theta f|.
double PpmResidual(const Objective& obj, const Iterate& from, const Iterate& to,
                   const Vector& z, double eta);

// One iteration t (1-indexed) of `spec` from `current` on data point z.
Iterate ApplyStep(const AlgorithmSpec& spec, const Objective& obj, long t,
                  const Iterate& current, const Vector& z,
                  const InnerSolverOptions& inner = {},
                  const ProxSolverOptions& prox = {});

// Uniform draws with replacement from {0, ..., n-1}, one per iteration.
std::vector<int> SampleIndexStream(int n, long iterations, std::uint64_t seed);

struct RunOptions {
  long stride = 1;
  // When non-empty, overrides the seeded stream (used to couple runs).
  std::vector<int> indices;
  InnerSolverOptions inner;
  ProxSolverOptions prox;
};

// Recorded iterates of one run. Entry 0 is the initialization at t = 0;
// further entries are every stride-th iteration plus the final one.
// w_bar/theta_bar hold running averages of iterates 1..t (the initial point
// at t = 0).
struct Trajectory {
  std::vector<long> t;
  std::vector<Vector> w;
  std::vector<Vector> theta;
  std::vector<Vector> w_bar;
  std::vector<Vector> theta_bar;
  std::vector<int> sampled_indices;  // one per iteration, stochastic only
  std::uint64_t seed = 0;

  std::size_t size() const { return t.size(); }
};

Trajectory Run(const AlgorithmSpec& spec, const Objective& obj,
               const Dataset& data, const Vector& w0, const Vector& theta0,
               long iterations, std::uint64_t seed,
               const RunOptions& options = {});

// Arithmetic mean of iterates 1..T; T must be a recorded iteration.
Iterate AverageIterates(const Trajectory& traj, long T);

// Header t,w_0..w_{d-1},theta_0..theta_{d-1}; 17 significant digits.
void WriteTrajectoryCsv(const Trajectory& traj, std::ostream& out);

}  // namespace mmlab

#endif  // MMLAB_OPTIMIZERS_H_
