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

#include <Eigen/LU>
#include <cmath>
#include <complex>

#include "mmlab/error.h"

namespace mmlab {
namespace {

Vector StandardNormal(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = normal(rng);
  return v;
}

Vector UniformBall(int d, double rho, Rng& rng) {
  if (!std::isfinite(rho)) return StandardNormal(d, rng);
  Vector dir = StandardNormal(d, rng);
  const double norm = dir.norm();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = rho * std::pow(unit(rng), 1.0 / d);
  if (norm == 0.0) return Vector::Zero(d);
  return dir * (radius / norm);
}

Vector Stack(const Vector& a, const Vector& b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

// A few rounds of finite-difference power iteration on a gradient field
// around x. Returns the largest observed difference ratio.
template <typename Grad, typename Project>
double LocalRatio(const Grad& grad, const Project& project, const Vector& x,
                  Vector direction, double h, int rounds) {
  const Vector g0 = grad(x);
  double best = 0.0;
  for (int r = 0; r < rounds; ++r) {
    const double dn = direction.norm();
    if (dn == 0.0) break;
    const Vector x1 = project(Vector(x + (h / dn) * direction));
    const double step = (x1 - x).norm();
    if (step < 1e-12) break;
    const Vector dg = grad(x1) - g0;
    best = std::max(best, dg.norm() / step);
    direction = dg;
  }
  return best;
}

constexpr double kFdStep = 1e-4;
constexpr int kPowerRounds = 4;

}  // namespace

Sampler UniformBallSampler(int d, double rho) {
  return [d, rho](Rng& rng) { return UniformBall(d, rho, rng); };
}

Sampler GaussianSampler(int d) {
  return [d](Rng& rng) { return StandardNormal(d, rng); };
}

SaddlePoint QuadraticSaddle(const Objective& obj, const Dataset& data) {
  const Vector& zbar = data.mean();
  obj.CheckDim(zbar, "dataset samples");
  SaddlePoint out;
  switch (obj.kind()) {
    case ObjectiveKind::kScScQuadratic: {
      const double mu = obj.mu();
      const double scale = 1.0 / (1.0 + mu * mu);
      out.w_star = -mu * scale * zbar;
      out.theta_star = scale * zbar;
      break;
    }
    case ObjectiveKind::kBilinear:
      if (!obj.theta_bounded()) {
        throw Error(ErrorCode::kNoClosedForm,
                    "bilinear saddle needs a bounded theta-set");
      }
      out.w_star = Vector::Zero(obj.dim());
      out.theta_star = ProjectBall(zbar, obj.rho_theta());
      break;
    case ObjectiveKind::kToyNcSc:
      throw Error(ErrorCode::kNoClosedForm,
                  "no closed-form saddle for toy-ncsc");
  }
  out.value = EmpiricalRisk(obj, out.w_star, out.theta_star, data);
  return out;
}

double BilinearExactDelta(double alpha, long n, long T, const Vector& dz) {
  if (T < 1 || n < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "bilinear exact delta needs T >= 1 and n >= 1");
  }
  return alpha / static_cast<double>(n) *
         std::pow(1.0 + alpha * alpha, static_cast<double>(T) / 2.0) *
         dz.norm();
}

double BilinearPersistentDelta(double alpha, long n, long T, const Vector& dz) {
  if (T < 0 || n < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "bilinear persistent delta needs T >= 0 and n >= 1");
  }
  // Per coordinate, u = dw + i dtheta obeys u' = (1 - i alpha) u - alpha dz/n,
  // so u_T = (dz/n) ((1 - i alpha)^T - 1) / i.
  const std::complex<double> rotation(1.0, -alpha);
  const double factor = std::abs(std::pow(rotation, static_cast<int>(T)) - 1.0);
  return factor * dz.norm() / static_cast<double>(n);
}

FiniteDifferenceGradient FiniteDifferenceGrad(const Objective& obj,
                                              const Vector& w,
                                              const Vector& theta,
                                              const Vector& z, double h) {
  if (!(h > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "finite-difference step must be > 0");
  }
  obj.CheckDims(w, theta, z);
  const int d = obj.dim();
  FiniteDifferenceGradient out{Vector(d), Vector(d)};
  for (int i = 0; i < d; ++i) {
    Vector wp = w, wm = w;
    wp[i] += h;
    wm[i] -= h;
    out.grad_w[i] =
        (obj.Value(wp, theta, z) - obj.Value(wm, theta, z)) / (2 * h);
    Vector tp = theta, tm = theta;
    tp[i] += h;
    tm[i] -= h;
    out.grad_theta[i] = (obj.Value(w, tp, z) - obj.Value(w, tm, z)) / (2 * h);
  }
  return out;
}

Iterate DirectPpmSolve(const Objective& obj, const Vector& w,
                       const Vector& theta, const Vector& z, double eta) {
  obj.CheckDims(w, theta, z);
  double mu = 0.0;
  switch (obj.kind()) {
    case ObjectiveKind::kBilinear:
      break;
    case ObjectiveKind::kScScQuadratic:
      mu = obj.mu();
      break;
    case ObjectiveKind::kToyNcSc:
      throw Error(ErrorCode::kNoClosedForm,
                  "direct proximal solve needs a linear-quadratic objective");
  }
  // [ (1 + eta mu) I   -eta I         ] [w']   [w - eta z]
  // [  eta I           (1 + eta mu) I ] [t'] = [theta    ]
  const int d = obj.dim();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd A(2 * d, 2 * d);
  A << (1.0 + eta * mu) * I, -eta * I, eta * I, (1.0 + eta * mu) * I;
  const Vector x = A.fullPivLu().solve(Stack(w - eta * z, theta));
  return {x.head(d), x.tail(d)};
}

Constants EstimateConstants(const Objective& obj, const Sampler& z_sampler,
                            long num_samples, std::uint64_t seed) {
  if (!obj.w_bounded() || !obj.theta_bounded()) {
    throw Error(ErrorCode::kInvalidArgument,
                "constant estimation needs finite radii");
  }
  if (num_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "num_samples must be >= 1");
  }
  const int d = obj.dim();
  Rng rng(seed);
  Constants out;
  out.lipschitz = 0.0;
  out.lipschitz_w = 0.0;
  out.smoothness = 0.0;
  out.mu = obj.mu();
  for (long k = 0; k < num_samples; ++k) {
    const Vector w = UniformBall(d, obj.rho_w(), rng);
    const Vector theta = UniformBall(d, obj.rho_theta(), rng);
    const Vector z = z_sampler(rng);
    const Vector direction = StandardNormal(2 * d, rng);

    const Vector gw = obj.GradW(w, theta, z);
    const Vector gt = obj.GradTheta(w, theta, z);
    out.lipschitz_w = std::max(out.lipschitz_w, gw.norm());
    out.lipschitz = std::max(out.lipschitz, std::hypot(gw.norm(), gt.norm()));

    auto grad = [&](const Vector& x) {
      return Stack(obj.GradW(x.head(d), x.tail(d), z),
                   obj.GradTheta(x.head(d), x.tail(d), z));
    };
    auto project = [&](const Vector& x) {
      return Stack(ProjectBall(x.head(d), obj.rho_w()),
                   ProjectBall(x.tail(d), obj.rho_theta()));
    };
    out.smoothness =
        std::max(out.smoothness, LocalRatio(grad, project, Stack(w, theta),
                                            direction, kFdStep, kPowerRounds));
  }
  return out;
}

double EstimateMaxSmoothness(const Objective& obj, const Vector& z,
                             long num_samples, std::uint64_t seed) {
  if (num_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "num_samples must be >= 1");
  }
  obj.CheckDim(z, "z");
  const int d = obj.dim();
  Rng rng(seed);
  auto grad = [&](const Vector& w) { return obj.MaxGradient(w, z); };
  auto project = [&](const Vector& w) { return ProjectBall(w, obj.rho_w()); };
  double best = 0.0;
  for (long k = 0; k < num_samples; ++k) {
    const Vector w = UniformBall(d, obj.rho_w(), rng);
    const Vector direction = StandardNormal(d, rng);
    best = std::max(
        best, LocalRatio(grad, project, w, direction, kFdStep, kPowerRounds));
  }
  return best;
}

ConvergenceCheck SppmConvergenceCheck(const Objective& obj, const Dataset& data,
                                      double eta, long T, Mode mode,
                                      const std::vector<std::uint64_t>& seeds,
                                      const Vector& w0, const Vector& theta0) {
  if (seeds.empty() || T < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "convergence check needs T >= 1 and at least one seed");
  }
  const SaddlePoint saddle = QuadraticSaddle(obj, data);
  AlgorithmSpec spec;
  spec.family = Family::kPpm;
  spec.mode = mode;
  spec.eta = Schedule::Constant(eta);
  RunOptions options;
  options.stride = T;

  const double optimum = WorstCaseEmpiricalRisk(obj, saddle.w_star, data);
  const std::size_t runs = mode == Mode::kFullBatch ? 1 : seeds.size();
  std::vector<double> gaps;
  gaps.reserve(runs);
  for (std::size_t k = 0; k < runs; ++k) {
    const Trajectory traj =
        Run(spec, obj, data, w0, theta0, T, seeds[k], options);
    const Vector w_bar = AverageIterates(traj, T).w;
    gaps.push_back(WorstCaseEmpiricalRisk(obj, w_bar, data) - optimum);
  }

  ConvergenceCheck out;
  double sum = 0.0;
  for (double g : gaps) sum += g;
  out.gap = sum / static_cast<double>(gaps.size());
  if (gaps.size() > 1) {
    double ss = 0.0;
    for (double g : gaps) ss += (g - out.gap) * (g - out.gap);
    out.gap_se = std::sqrt(ss / static_cast<double>(gaps.size() - 1) /
                           static_cast<double>(gaps.size()));
  }
  out.distance = std::hypot((w0 - saddle.w_star).norm(),
                            (theta0 - saddle.theta_star).norm());
  out.bound =
      out.distance * out.distance / (2.0 * eta * static_cast<double>(T));
  return out;
}

}  // namespace mmlab
