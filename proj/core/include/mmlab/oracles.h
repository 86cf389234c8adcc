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

#ifndef MMLAB_ORACLES_H_
#define MMLAB_ORACLES_H_

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "mmlab/dataset.h"
#include "mmlab/objectives.h"
#include "mmlab/optimizers.h"

namespace mmlab {

// Reference implementations that tests compare the production code against.
// They favour directness over speed.

using Rng = std::mt19937_64;
using Sampler = std::function<Vector(Rng&)>;

// Uniform draws from the ball of radius rho in R^d; rho may be kUnbounded, in
// which case standard normal draws are returned instead.
Sampler UniformBallSampler(int d, double rho);
Sampler GaussianSampler(int d);

struct SaddlePoint {
  Vector w_star;
  Vector theta_star;
  double value = 0.0;  // empirical risk at the saddle
};

// ScScQuadratic: w* = -mu zbar / (1 + mu^2), theta* = zbar / (1 + mu^2).
// Bilinear on a bounded theta-ball: w* = 0, theta* = proj(zbar).
SaddlePoint QuadraticSaddle(const Objective& obj, const Dataset& data);

// (alpha / n) (1 + alpha^2)^(T/2) |dz|, T >= 1.
double BilinearExactDelta(double alpha, long n, long T, const Vector& dz);

// |(1 - i alpha)^T - 1| |dz| / n: the joint divergence of two unprojected
// full-batch bilinear GDA runs from a common start on datasets whose means
// differ by dz / n. Computed by the complex power, not by simulation.
double BilinearPersistentDelta(double alpha, long n, long T, const Vector& dz);

struct FiniteDifferenceGradient {
  Vector grad_w;
  Vector grad_theta;
};

FiniteDifferenceGradient FiniteDifferenceGrad(const Objective& obj,
                                              const Vector& w,
                                              const Vector& theta,
                                              const Vector& z, double h);

// Solves the unprojected proximal saddle system of a linear-quadratic
// objective as one dense 2d x 2d system.
Iterate DirectPpmSolve(const Objective& obj, const Vector& w,
                       const Vector& theta, const Vector& z, double eta);

// Monte-Carlo lower estimates of L, L_w and ell on the feasible balls of
// `obj` (which must be finite), with z drawn from `z_sampler`. Each sample
// contributes gradient norms at one point and gradient-difference ratios
// from a short finite-difference power iteration around it. Outputs are
// running maxima, so they never decrease with num_samples. mu is copied
// from the objective.
Constants EstimateConstants(const Objective& obj, const Sampler& z_sampler,
                            long num_samples, std::uint64_t seed);

// Largest observed |grad f_max(w) - grad f_max(w')| / |w - w'| for fixed z
// over the w-ball of `obj`, with the same pairing scheme as above.
double EstimateMaxSmoothness(const Objective& obj, const Vector& z,
                             long num_samples, std::uint64_t seed);

struct ConvergenceCheck {
  double gap = 0.0;     // mean over seeds in stochastic mode
  double gap_se = 0.0;  // standard error; 0 for a single run
  double bound = 0.0;   // D^2 / (2 eta T)
  double distance = 0.0;
};

// Runs (S)PPM with constant eta from (w0, theta0) and compares the
// worst-case empirical risk gap of the averaged iterate to the averaged-
// iterate bound, with D the distance from the start to QuadraticSaddle.
ConvergenceCheck SppmConvergenceCheck(const Objective& obj, const Dataset& data,
                                      double eta, long T, Mode mode,
                                      const std::vector<std::uint64_t>& seeds,
                                      const Vector& w0, const Vector& theta0);

}  // namespace mmlab

#endif  // MMLAB_ORACLES_H_
