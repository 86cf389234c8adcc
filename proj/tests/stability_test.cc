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

#include "mmlab/stability.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mmlab/bounds.h"
#include "mmlab/dataset.h"
#include "mmlab/error.h"
#include "mmlab/objectives.h"
#include "mmlab/optimizers.h"
#include "mmlab/oracles.h"

namespace mmlab {
namespace {

Vector V(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vector Gaussian(Rng& rng, int d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = normal(rng);
  return v;
}

double MaxSampleNorm(const Dataset& a, const Dataset& b) {
  return std::max(a.samples().rowwise().norm().maxCoeff(),
                  b.samples().rowwise().norm().maxCoeff());
}

// Largest joint gradient norm over the recorded iterates of `traj` and every
// sample of either dataset.
double MeasuredLipschitz(const Objective& obj, const Trajectory& traj,
                         const Dataset& a, const Dataset& b) {
  double best = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    for (const Dataset* s : {&a, &b}) {
      for (int i = 0; i < s->size(); ++i) {
        const Vector z = s->sample(i);
        best = std::max(
            best,
            std::hypot(obj.GradW(traj.w[k], traj.theta[k], z).norm(),
                       obj.GradTheta(traj.w[k], traj.theta[k], z).norm()));
      }
    }
  }
  return best;
}

TEST(NeighborDatasetTest, ReplacesOneRow) {
  Matrix m(2, 1);
  m << 1, 2;
  const Dataset s(m);
  const Dataset t = MakeNeighborDataset(s, 0, V({5}));
  EXPECT_EQ(t.sample(0)[0], 5.0);
  EXPECT_EQ(t.sample(1)[0], 2.0);
  EXPECT_TRUE(MakeNeighborDataset(s, 1, V({2})) == s);
}

TEST(NeighborDatasetTest, ExactlyOneCsvRowDiffers) {
  const Dataset s = MakeGaussianDataset(3, 12, 1);
  const Dataset t = MakeNeighborDataset(s, 7, V({9, 9, 9}));
  std::stringstream a, b;
  WriteDatasetCsv(s, a);
  WriteDatasetCsv(t, b);
  std::string la, lb;
  int differing = 0, row = 0, which = -1;
  while (std::getline(a, la) && std::getline(b, lb)) {
    if (la != lb) {
      ++differing;
      which = row;
    }
    ++row;
  }
  EXPECT_EQ(differing, 1);
  EXPECT_EQ(which, 7);
}

TEST(NeighborDatasetTest, BadIndexOrDimension) {
  const Dataset s = MakeGaussianDataset(2, 3, 1);
  try {
    MakeNeighborDataset(s, 3, V({0, 0}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
  EXPECT_THROW(MakeNeighborDataset(s, -1, V({0, 0})), Error);
  EXPECT_THROW(MakeNeighborDataset(s, 0, V({0})), Error);
}

TEST(PairedRunTest, IdenticalDatasetsNeverDiverge) {
  const Dataset s = MakeGaussianDataset(3, 10, 2);
  AlgorithmSpec spec;
  spec.mode = Mode::kStochastic;
  const StabilityTrace tr = PairedRun(spec, Objective::ToyNcSc(3, 0.5), s, s,
                                      V({1, 0, 0}), V({0, 0, 0}), 100, 3);
  EXPECT_EQ(tr.replaced_index, -1);
  EXPECT_EQ(tr.size(), 101u);
  for (double d : tr.delta) EXPECT_EQ(d, 0.0);
}

TEST(PairedRunTest, TraceInvariants) {
  const Dataset s = MakeGaussianDataset(3, 10, 2);
  const Dataset t = MakeNeighborDataset(s, 4, V({2, -2, 1}));
  for (Family f :
       {Family::kGda, Family::kGdmax, Family::kPpm, Family::kPpmax}) {
    AlgorithmSpec spec;
    spec.family = f;
    spec.mode = Mode::kStochastic;
    spec.step_w = spec.step_theta = spec.eta = Schedule::Constant(0.1);
    const StabilityTrace tr =
        PairedRun(spec, Objective::ScScQuadratic(3, 0.2), s, t, V({0, 0, 0}),
                  V({0, 0, 0}), 200, 5);
    EXPECT_EQ(tr.replaced_index, 4);
    EXPECT_EQ(tr.delta[0], 0.0);
    for (std::size_t k = 0; k < tr.size(); ++k) {
      EXPECT_GE(tr.delta[k], std::max(tr.delta_w[k], tr.delta_theta[k]));
      EXPECT_LE(tr.delta[k], tr.delta_w[k] + tr.delta_theta[k] + 1e-15);
    }
  }
}

// Unprojected full-batch GDA on the bilinear objective: per coordinate the
// difference u = dw + i dtheta follows u' = (1 - i alpha) u - alpha dz / n.
TEST(PairedRunTest, BilinearFullBatchMatchesClosedForm) {
  const StabilityTrace hand = [] {
    Matrix m = Matrix::Zero(10, 1);
    const Dataset s(m);
    const Dataset t = MakeNeighborDataset(s, 3, V({1}));
    AlgorithmSpec spec;
    spec.step_w = spec.step_theta = Schedule::Constant(0.1);
    return PairedRun(spec, Objective::Bilinear(1), s, t, V({0}), V({0}), 2, 0);
  }();
  EXPECT_NEAR(hand.delta[1], 0.01, 1e-15);
  EXPECT_NEAR(hand.delta[2], 0.01 * std::sqrt(4.01), 1e-15);

  for (double alpha : {0.01, 0.05, 0.1, 0.3}) {
    const Dataset s = MakeGaussianDataset(4, 10, 1);
    const Vector z_new = V({1, -2, 0.5, 0.25});
    const Dataset t = MakeNeighborDataset(s, 2, z_new);
    const Vector dz = s.sample(2) - z_new;
    AlgorithmSpec spec;
    spec.step_w = spec.step_theta = Schedule::Constant(alpha);
    const StabilityTrace tr =
        PairedRun(spec, Objective::Bilinear(4), s, t, V({0.1, 0, 0, 0}),
                  V({0, 0, 0, 0.2}), 200, 0);
    for (long T = 1; T <= 200; ++T) {
      const double expected = BilinearPersistentDelta(alpha, 10, T, dz);
      EXPECT_NEAR(tr.delta[T], expected, 1e-9 * expected)
          << "alpha=" << alpha << " T=" << T;
    }
  }
}

TEST(PairedRunTest, StochasticScScGdaMeanBelowRecursionLimit) {
  const int d = 3, n = 20;
  const double mu = 0.5, alpha = 0.1;
  const Objective obj = Objective::ScScQuadratic(d, mu, 5.0, 5.0);
  const Dataset s = MakeGaussianDataset(d, n, 11);
  Rng rng(2);
  const Dataset t = MakeNeighborDataset(s, 0, Gaussian(rng, d));
  const Constants c = AnalyticConstants(obj, MaxSampleNorm(s, t));
  AlgorithmSpec spec;
  spec.mode = Mode::kStochastic;
  spec.step_w = spec.step_theta = Schedule::Constant(alpha);
  const double ell = c.smoothness;
  ASSERT_LE(alpha, 2 * mu / (ell * ell));
  std::vector<double> finals;
  const long T = 200;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    finals.push_back(
        PairedRun(spec, obj, s, t, Vector::Zero(d), Vector::Zero(d), T, seed)
            .delta[T]);
  }
  double mean = 0;
  for (double x : finals) mean += x;
  mean /= finals.size();
  double ss = 0;
  for (double x : finals) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (finals.size() - 1) / finals.size());
  const double limit = 2 * c.lipschitz / ((mu - alpha * ell * ell / 2) * n);
  EXPECT_LE(mean, limit + 3 * se);
}

TEST(PairedRunTest, FullBatchPpmGrowthPerIteration) {
  const int d = 3, n = 15;
  const double eta = 0.2;
  const Objective obj = Objective::Bilinear(d, 4.0, 4.0);
  const Dataset s = MakeGaussianDataset(d, n, 6);
  const Dataset t = MakeNeighborDataset(s, 5, V({3, 3, -3}));
  AlgorithmSpec spec;
  spec.family = Family::kPpm;
  spec.eta = Schedule::Constant(eta);
  const long T = 300;
  const StabilityTrace tr =
      PairedRun(spec, obj, s, t, Vector::Zero(d), Vector::Zero(d), T, 0);
  const Trajectory a =
      mmlab::Run(spec, obj, s, Vector::Zero(d), Vector::Zero(d), T, 0);
  const Trajectory b =
      mmlab::Run(spec, obj, t, Vector::Zero(d), Vector::Zero(d), T, 0);
  const double lhat = std::max(MeasuredLipschitz(obj, a, s, t),
                               MeasuredLipschitz(obj, b, s, t));
  for (long k = 0; k < T; ++k) {
    EXPECT_LE(tr.delta[k + 1], tr.delta[k] + 2 * eta * lhat / n + 1e-12);
  }
}

TEST(PairedRunTest, StochasticPpmCumulativeGrowth) {
  const int d = 3, n = 15;
  const Objective obj = Objective::Bilinear(d, 4.0, 4.0);
  const Dataset s = MakeGaussianDataset(d, n, 6);
  const Dataset t = MakeNeighborDataset(s, 5, V({3, 3, -3}));
  AlgorithmSpec spec;
  spec.family = Family::kPpm;
  spec.mode = Mode::kStochastic;
  spec.eta = Schedule::InverseT(0.5);
  const long T = 300;
  std::vector<double> finals;
  double lhat = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    finals.push_back(
        PairedRun(spec, obj, s, t, Vector::Zero(d), Vector::Zero(d), T, seed)
            .delta[T]);
    RunOptions opts;
    opts.indices = SampleIndexStream(n, T, seed);
    for (const Dataset* ds : {&s, &t}) {
      const Trajectory tr = mmlab::Run(spec, obj, *ds, Vector::Zero(d),
                                       Vector::Zero(d), T, seed, opts);
      lhat = std::max(lhat, MeasuredLipschitz(obj, tr, s, t));
    }
  }
  double mean = 0;
  for (double x : finals) mean += x;
  mean /= finals.size();
  double ss = 0;
  for (double x : finals) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (finals.size() - 1) / finals.size());
  double eta_sum = 0;
  for (long k = 1; k <= T; ++k) eta_sum += spec.eta.At(k);
  EXPECT_LE(mean, 2 * lhat / n * eta_sum + 3 * se);
}

TEST(PairedRunTest, ScScGdaMonotoneCoupling) {
  const int d = 3, n = 12;
  const double mu = 0.5, alpha = 0.2;
  const Objective obj = Objective::ScScQuadratic(d, mu, 6.0, 6.0);
  const Dataset s = MakeGaussianDataset(d, n, 3);
  const Dataset t = MakeNeighborDataset(s, 0, V({-2, 2, 1}));
  AlgorithmSpec spec;
  spec.step_w = spec.step_theta = Schedule::Constant(alpha);
  const long T = 200;
  const Vector w0 = V({1, 2, 0}), th0 = V({0, -1, 1});
  const StabilityTrace tr = PairedRun(spec, obj, s, t, w0, th0, T, 0);
  const Trajectory a = mmlab::Run(spec, obj, s, w0, th0, T, 0);
  const Trajectory b = mmlab::Run(spec, obj, t, w0, th0, T, 0);
  const double lhat = std::max(MeasuredLipschitz(obj, a, s, t),
                               MeasuredLipschitz(obj, b, s, t));
  const double ell = obj.constants().smoothness;
  const double xi = 1 - alpha * mu + alpha * alpha * ell * ell / 2;
  for (long k = 0; k < T; ++k) {
    EXPECT_LE(tr.delta[k + 1], xi * tr.delta[k] + 2 * alpha * lhat / n + 1e-12);
  }
}

// Componentwise domination by the 2x2 expansivity matrix on iterations where
// both runs sample the same point.
TEST(PairedRunTest, ToyNcScCoupledMatrixDomination) {
  const int d = 4, n = 10;
  const double mu = 0.5;
  const Objective obj = Objective::ToyNcSc(d, mu, 2.0, 3.0);
  const double ell = obj.constants().smoothness;
  const double aw = 0.8 / ell, at = 0.5 / ell;
  const Dataset s = MakeGaussianDataset(d, n, 12);
  const int replaced = 6;
  const Dataset t = MakeNeighborDataset(s, replaced, V({1, 1, 1, 1}));
  AlgorithmSpec spec;
  spec.mode = Mode::kStochastic;
  spec.step_w = Schedule::Constant(aw);
  spec.step_theta = Schedule::Constant(at);
  const long T = 400;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const StabilityTrace tr = PairedRun(spec, obj, s, t, V({0.5, 0, 0, -0.5}),
                                        Vector::Zero(d), T, seed);
    const std::vector<int> idx = SampleIndexStream(n, T, seed);
    for (long k = 0; k < T; ++k) {
      if (idx[k] == replaced) continue;
      ++checked;
      const double dw = tr.delta_w[k], dt = tr.delta_theta[k];
      EXPECT_LE(tr.delta_w[k + 1], (1 + aw * ell) * dw + aw * ell * dt + 1e-12);
      EXPECT_LE(tr.delta_theta[k + 1],
                at * ell * dw + (1 - at * mu / 2) * dt + 1e-12);
    }
  }
  EXPECT_GT(checked, 3000);
}

TEST(GenRiskCurveTest, ZeroStartWithZeroGradientStaysZero) {
  // z_i = 0 for all i and a zero start keep every gradient at zero.
  const Dataset s(Matrix::Zero(5, 3));
  AlgorithmSpec spec;
  spec.mode = Mode::kStochastic;
  const GenRiskCurve c =
      MakeGenRiskCurve(spec, Objective::Bilinear(3), s, V({1, 2, 3}),
                       Vector::Zero(3), Vector::Zero(3), 100, 1, 10);
  EXPECT_EQ(c.t.size(), 11u);
  for (double g : c.gen_risk) EXPECT_EQ(g, 0.0);
}

TEST(GenRiskCurveTest, MatchesClosedFormAlongRun) {
  const Dataset s = MakeGaussianDataset(3, 20, 1);
  const Objective obj = Objective::ScScQuadratic(3, 0.1, 10.0, 10.0);
  AlgorithmSpec spec;
  spec.mode = Mode::kStochastic;
  RunOptions opts;
  opts.stride = 7;
  const Trajectory tr =
      mmlab::Run(spec, obj, s, Vector::Zero(3), Vector::Zero(3), 50, 4, opts);
  const GenRiskCurve c =
      MakeGenRiskCurve(spec, obj, s, Vector::Zero(3), Vector::Zero(3),
                       Vector::Zero(3), 50, 4, 7);
  ASSERT_EQ(c.t, tr.t);
  for (std::size_t k = 0; k < c.t.size(); ++k) {
    EXPECT_EQ(c.gen_risk[k], -tr.w[k].dot(s.mean()));
    EXPECT_TRUE(std::isfinite(c.gen_risk[k]));
  }
  EXPECT_THROW(
      MakeGenRiskCurve(spec, Objective::ToyNcSc(3, 0.5), s, Vector::Zero(3),
                       Vector::Zero(3), Vector::Zero(3), 5, 1, 1),
      Error);
}

Iterate SampleFrom(Rng& rng, int d, double rho_w, double rho_t) {
  return {UniformBallSampler(d, rho_w)(rng), UniformBallSampler(d, rho_t)(rng)};
}

TEST(ExpansivityTest, IdentityIsExactlyOne) {
  const double e = EstimateExpansivity(
      [](const Iterate& u) { return u; },
      [](Rng& rng) { return SampleFrom(rng, 3, 1.0, 1.0); }, 200, 1);
  EXPECT_EQ(e, 1.0);
}

TEST(ExpansivityTest, ScScGdaBelowCoefficient) {
  const double mu = 1.0, alpha = 0.1;
  const Objective obj = Objective::ScScQuadratic(3, mu);
  const Vector z = V({0.2, -0.1, 0.4});
  const Constants c = obj.constants();
  const double coeff =
      Lemma1Coefficient(ExpansivityRegime::kScScGda, c, alpha).value;
  EXPECT_NEAR(coeff, 0.91, 1e-15);
  const double e = EstimateExpansivity(
      [&](const Iterate& u) {
        return GdaStep(obj, u.w, u.theta, z, alpha, alpha);
      },
      [](Rng& rng) { return SampleFrom(rng, 3, 5.0, 5.0); }, 1000, 2);
  EXPECT_LE(e, coeff + 1e-9);
  // The map is linear with operator norm sqrt((1 - alpha mu)^2 + alpha^2).
  EXPECT_NEAR(e, std::sqrt(0.81 + 0.01), 1e-9);
}

TEST(ExpansivityTest, BilinearGdaAttainsCoefficient) {
  const double alpha = 0.3;
  const Objective obj = Objective::Bilinear(3);
  const Vector z = V({1, 2, 3});
  const double e = EstimateExpansivity(
      [&](const Iterate& u) {
        return GdaStep(obj, u.w, u.theta, z, alpha, alpha);
      },
      [](Rng& rng) { return SampleFrom(rng, 3, 10.0, 10.0); }, 1000, 3);
  EXPECT_LE(e, std::sqrt(1.09) + 1e-9);
  EXPECT_GE(e, std::sqrt(1.09) - 1e-3);
}

TEST(UniformStabilityTest, ZeroIterationsGiveZero) {
  const Dataset s = MakeGaussianDataset(2, 5, 1);
  const Objective obj = Objective::Bilinear(2, 3.0, 3.0);
  const auto est = EstimateUniformStability(
      AlgorithmSpec{}, obj, s, MakeProbes(obj, 8, 1), Vector::Zero(2),
      Vector::Zero(2), 0, {{1, V({5, 5})}}, {1, 2});
  EXPECT_EQ(est.estimate, 0.0);
  EXPECT_EQ(est.lipschitz_bound, 0.0);
}

TEST(UniformStabilityTest, DominatedByLipschitzBound) {
  const int d = 3, n = 20;
  Objective obj = Objective::ScScQuadratic(d, 0.1, 10.0, 10.0);
  const Dataset s = MakeGaussianDataset(d, n, 4);
  Rng rng(9);
  std::vector<Replacement> reps;
  double rho_z = s.samples().rowwise().norm().maxCoeff();
  for (int i = 0; i < 4; ++i) {
    reps.push_back({i * 5, Gaussian(rng, d)});
    rho_z = std::max(rho_z, reps.back().z_new.norm());
  }
  obj = obj.WithConstants(AnalyticConstants(obj, rho_z));
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t k = 0; k < 30; ++k) seeds.push_back(k);
  for (Family f : {Family::kGda, Family::kPpm}) {
    AlgorithmSpec spec;
    spec.family = f;
    spec.mode = Mode::kStochastic;
    const auto est = EstimateUniformStability(
        spec, obj, s, MakeProbes(obj, 64, 3), Vector::Zero(d), Vector::Zero(d),
        300, reps, seeds);
    EXPECT_GT(est.estimate, 0.0);
    EXPECT_LE(est.estimate, est.lipschitz_bound +
                                3 * (est.lipschitz_bound_se + est.estimate_se));
  }
}

TEST(StabilityCsvTest, Headers) {
  StabilityTrace tr;
  tr.t = {0, 1};
  tr.delta_w = {0, 0.5};
  tr.delta_theta = {0, 0};
  tr.delta = {0, 0.5};
  std::ostringstream out;
  WriteStabilityTraceCsv(tr, out);
  EXPECT_EQ(out.str(), "t,delta_w,delta_theta,delta\n0,0,0,0\n1,0.5,0,0.5\n");
  GenRiskCurve c;
  c.t = {0, 10};
  c.gen_risk = {0, -0.25};
  std::ostringstream g;
  WriteGenRiskCurveCsv(c, g);
  EXPECT_EQ(g.str(), "t,gen_risk\n0,0\n10,-0.25\n");
}

}  // namespace
}  // namespace mmlab
