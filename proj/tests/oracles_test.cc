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

#include "mmlab/oracles.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mmlab/bounds.h"
#include "mmlab/dataset.h"
#include "mmlab/error.h"
#include "mmlab/objectives.h"
#include "mmlab/optimizers.h"

namespace mmlab {
namespace {

Vector V(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Dataset Single(const Vector& z) {
  Matrix m(1, z.size());
  m.row(0) = z.transpose();
  return Dataset(m);
}

TEST(QuadraticSaddleTest, WorkedValues) {
  const SaddlePoint s =
      QuadraticSaddle(Objective::ScScQuadratic(1, 0.1), Single(V({1})));
  EXPECT_NEAR(s.w_star[0], -0.0990099, 1e-7);
  EXPECT_NEAR(s.theta_star[0], 0.990099, 1e-6);
  for (const Objective& obj : {Objective::ScScQuadratic(2, 0.1),
                               Objective::Bilinear(2, kUnbounded, 1.0)}) {
    const SaddlePoint z = QuadraticSaddle(obj, Single(V({0, 0})));
    EXPECT_EQ(z.w_star, Vector::Zero(2));
    EXPECT_EQ(z.theta_star, Vector::Zero(2));
  }
}

TEST(QuadraticSaddleTest, BilinearClipsToBall) {
  const SaddlePoint s = QuadraticSaddle(Objective::Bilinear(2, kUnbounded, 1.0),
                                        Single(V({3, 4})));
  EXPECT_EQ(s.w_star, Vector::Zero(2));
  EXPECT_NEAR(s.theta_star[0], 0.6, 1e-15);
  EXPECT_NEAR(s.theta_star[1], 0.8, 1e-15);
  EXPECT_THROW(QuadraticSaddle(Objective::Bilinear(2), Single(V({0, 0}))),
               Error);
  EXPECT_THROW(QuadraticSaddle(Objective::ToyNcSc(2, 0.5), Single(V({0, 0}))),
               Error);
}

TEST(QuadraticSaddleTest, FirstOrderConditionsVanish) {
  const Dataset data = MakeGaussianDataset(6, 40, 3);
  const Objective obj = Objective::ScScQuadratic(6, 0.1);
  const SaddlePoint s = QuadraticSaddle(obj, data);
  EXPECT_LE(obj.GradW(s.w_star, s.theta_star, data.mean()).norm(), 1e-12);
  EXPECT_LE(obj.GradTheta(s.w_star, s.theta_star, data.mean()).norm(), 1e-12);
}

TEST(QuadraticSaddleTest, VariationalInequality) {
  const Dataset data = MakeGaussianDataset(4, 30, 5);
  Rng rng(1);
  for (const Objective& obj : {Objective::ScScQuadratic(4, 0.1, 5.0, 5.0),
                               Objective::Bilinear(4, 5.0, 5.0)}) {
    const SaddlePoint s = QuadraticSaddle(obj, data);
    const Sampler w_ball = UniformBallSampler(4, obj.rho_w());
    const Sampler t_ball = UniformBallSampler(4, obj.rho_theta());
    for (int k = 0; k < 1000; ++k) {
      const Vector w = w_ball(rng), theta = t_ball(rng);
      EXPECT_LE(EmpiricalRisk(obj, s.w_star, theta, data), s.value + 1e-9);
      EXPECT_LE(s.value, EmpiricalRisk(obj, w, s.theta_star, data) + 1e-9);
    }
  }
}

TEST(BilinearDeltaTest, ExactFormWorkedValues) {
  EXPECT_NEAR(BilinearExactDelta(0.1, 10, 2, V({1})), 0.0101, 1e-15);
  EXPECT_EQ(BilinearExactDelta(0.1, 10, 5, V({0, 0})), 0.0);
  EXPECT_THROW(BilinearExactDelta(0.1, 10, 0, V({1})), Error);
  EXPECT_DOUBLE_EQ(BilinearExactDelta(0.3, 7, 9, V({3, 4})),
                   Remark1ExactBilinearDelta(0.3, 7, 9, 5.0));
}

TEST(BilinearDeltaTest, PersistentFormWorkedValues) {
  EXPECT_EQ(BilinearPersistentDelta(0.1, 10, 0, V({1})), 0.0);
  EXPECT_NEAR(BilinearPersistentDelta(0.1, 10, 1, V({1})), 0.01, 1e-16);
  EXPECT_NEAR(BilinearPersistentDelta(0.1, 10, 2, V({1})),
              0.01 * std::sqrt(4.01), 1e-15);
}

TEST(FiniteDifferenceTest, BilinearIsExactUpToRoundoff) {
  const Objective obj = Objective::Bilinear(3);
  const Vector w = V({0.5, -1, 2}), th = V({1, 1, -1}), z = V({0.3, 0, 0.7});
  const auto fd = FiniteDifferenceGrad(obj, w, th, z, 1e-3);
  EXPECT_LE((fd.grad_w - (z - th)).norm(), 1e-12);
  EXPECT_LE((fd.grad_theta + w).norm(), 1e-12);
  // z == theta: no dependence on w.
  EXPECT_LE(FiniteDifferenceGrad(obj, w, th, th, 1e-3).grad_w.norm(), 1e-12);
  EXPECT_THROW(FiniteDifferenceGrad(obj, w, th, z, 0.0), Error);
}

TEST(FiniteDifferenceTest, SecondOrderConvergence) {
  const Objective obj = Objective::ToyNcSc(3, 0.5);
  const Vector w = V({0.7, -1.2, 2.1}), th = V({1.5, -0.5, 2}),
               z = V({0.1, 0.2, 0.3});
  const Vector exact = obj.GradW(w, th, z);
  const double e1 =
      (FiniteDifferenceGrad(obj, w, th, z, 1e-2).grad_w - exact).norm();
  const double e2 =
      (FiniteDifferenceGrad(obj, w, th, z, 5e-3).grad_w - exact).norm();
  EXPECT_NEAR(e1 / e2, 4.0, 0.1);
}

TEST(DirectPpmSolveTest, SolvesOptimalitySystem) {
  const Objective obj = Objective::ScScQuadratic(3, 0.4);
  const Iterate from{V({1, 2, 3}), V({-1, 0, 1})};
  const Vector z = V({0.5, 0.5, -0.5});
  const Iterate to = DirectPpmSolve(obj, from.w, from.theta, z, 0.7);
  EXPECT_LE(PpmResidual(obj, from, to, z, 0.7), 1e-13);
  EXPECT_THROW(
      DirectPpmSolve(Objective::ToyNcSc(3, 0.5), from.w, from.theta, z, 0.7),
      Error);
}

TEST(EstimateConstantsTest, BilinearSupremum) {
  const Objective obj = Objective::Bilinear(2, 1.0, 1.0);
  const Constants c =
      EstimateConstants(obj, UniformBallSampler(2, 1.0), 100000, 4);
  EXPECT_LE(c.lipschitz_w, 2.0);
  EXPECT_GE(c.lipschitz_w, 1.9);
  EXPECT_NEAR(c.smoothness, 1.0, 1e-9);
}

TEST(EstimateConstantsTest, ScScSmoothnessBelowAnalytic) {
  const Objective obj = Objective::ScScQuadratic(3, 0.3, 2.0, 2.0);
  const Constants c = EstimateConstants(obj, GaussianSampler(3), 200, 1);
  EXPECT_LE(c.smoothness, AnalyticSmoothness(obj) + 1e-9);
  EXPECT_GE(c.smoothness, AnalyticSmoothness(obj) - 1e-6);
}

TEST(EstimateConstantsTest, MonotoneInSampleCount) {
  const Objective obj = Objective::ToyNcSc(3, 0.5, 2.0, 3.0);
  Constants prev = EstimateConstants(obj, GaussianSampler(3), 1, 9);
  EXPECT_TRUE(std::isfinite(prev.lipschitz));
  EXPECT_TRUE(std::isfinite(prev.smoothness));
  for (long k : {2L, 10L, 100L, 1000L}) {
    const Constants c = EstimateConstants(obj, GaussianSampler(3), k, 9);
    EXPECT_GE(c.lipschitz, prev.lipschitz);
    EXPECT_GE(c.lipschitz_w, prev.lipschitz_w);
    EXPECT_GE(c.smoothness, prev.smoothness);
    prev = c;
  }
}

TEST(EstimateMaxSmoothnessTest, ScScInteriorCurvature) {
  // Interior f_max = w'z + (mu/2 + 1/(2 mu)) |w|^2 has Hessian (mu + 1/mu) I.
  const double mu = 0.5;
  const Objective obj = Objective::ScScQuadratic(3, mu, 1.0, 100.0);
  const double est = EstimateMaxSmoothness(obj, V({0.1, 0.2, 0.3}), 50, 2);
  EXPECT_NEAR(est, mu + 1.0 / mu, 1e-6);
}

TEST(SppmConvergenceCheckTest, StartAtSaddle) {
  const Dataset data = MakeGaussianDataset(5, 50, 8);
  const Objective obj = Objective::ScScQuadratic(5, 0.1);
  const SaddlePoint s = QuadraticSaddle(obj, data);
  const ConvergenceCheck c = SppmConvergenceCheck(
      obj, data, 0.1, 50, Mode::kFullBatch, {1}, s.w_star, s.theta_star);
  EXPECT_LE(std::abs(c.gap), 1e-10);
  EXPECT_LE(c.distance, 1e-15);
}

TEST(SppmConvergenceCheckTest, FullBatchWithinBound) {
  const Dataset data = MakeGaussianDataset(5, 50, 8);
  const Objective obj = Objective::ScScQuadratic(5, 0.1);
  const ConvergenceCheck c =
      SppmConvergenceCheck(obj, data, 0.1, 500, Mode::kFullBatch, {1},
                           Vector::Constant(5, 1.0), Vector::Constant(5, -1.0));
  EXPECT_GE(c.gap, 0.0);
  EXPECT_LE(c.gap, c.bound);
}

TEST(SppmConvergenceCheckTest, StochasticWithinBound) {
  const Dataset data = MakeGaussianDataset(5, 50, 8);
  const Objective obj = Objective::ScScQuadratic(5, 0.1);
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 100; ++s) seeds.push_back(s);
  const ConvergenceCheck c =
      SppmConvergenceCheck(obj, data, 0.1, 500, Mode::kStochastic, seeds,
                           Vector::Constant(5, 1.0), Vector::Constant(5, -1.0));
  EXPECT_GT(c.gap_se, 0.0);
  EXPECT_LE(c.gap, c.bound + 3 * c.gap_se);
}

}  // namespace
}  // namespace mmlab
