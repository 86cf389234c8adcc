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

#include "mmlab/optimizers.h"

#include <fmt/format.h>

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "mmlab/error.h"

namespace mmlab {
namespace {

void CheckStep(double step, const char* name) {
  if (!(step >= 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} must be finite and >= 0, got {}", name, step));
  }
}

// Exact saddle of the proximal subproblem for Bilinear (mu = 0) and
// ScScQuadratic. Per coordinate the optimality system reads
//   (1 + eta mu) w' - eta t'      = w - eta z
//   eta w'         + (1 + eta mu) t' = t
// whose 2x2 matrix is a scaled rotation with determinant a^2 + b^2.
Iterate LinearQuadraticProx(const Objective& obj, const Vector& w,
                            const Vector& theta, const Vector& z, double eta) {
  const double mu =
      obj.kind() == ObjectiveKind::kScScQuadratic ? obj.mu() : 0.0;
  const double a = 1.0 + eta * mu;
  const double b = eta;
  const double det = a * a + b * b;
  const Vector rhs_w = w - eta * z;
  Iterate out;
  out.w = (a * rhs_w + b * theta) / det;
  out.theta = (a * theta - b * rhs_w) / det;
  return out;
}

}  // namespace

Schedule Schedule::Constant(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("constant stepsize must be > 0, got {}", alpha));
  }
  return Schedule(Kind::kConstant, alpha);
}

Schedule Schedule::InverseT(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("inverse_t constant must be > 0, got {}", c));
  }
  return Schedule(Kind::kInverseT, c);
}

Schedule Schedule::Parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("schedule '{}' is not <kind>:<value>", text));
  }
  const std::string kind(text.substr(0, colon));
  const std::string number(text.substr(colon + 1));
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(number, &used);
    if (used != number.size()) throw std::invalid_argument(number);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("schedule '{}' has a malformed value", text));
  }
  if (kind == "constant") return Constant(value);
  if (kind == "inverse_t") return InverseT(value);
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("unknown schedule kind '{}'", kind));
}

double Schedule::At(long t) const {
  if (kind_ == Kind::kConstant) return value_;
  if (t < 1) {
    throw Error(ErrorCode::kInvalidArgument, "inverse_t schedule needs t >= 1");
  }
  return value_ / static_cast<double>(t);
}

std::string Schedule::ToString() const {
  return fmt::format(
      "{}:{}", kind_ == Kind::kConstant ? "constant" : "inverse_t", value_);
}

std::string FamilyName(Family family) {
  switch (family) {
    case Family::kGda:
      return "gda";
    case Family::kGdmax:
      return "gdmax";
    case Family::kPpm:
      return "ppm";
    case Family::kPpmax:
      return "ppmax";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  if (name == "gda") return Family::kGda;
  if (name == "gdmax") return Family::kGdmax;
  if (name == "ppm") return Family::kPpm;
  if (name == "ppmax") return Family::kPpmax;
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("unknown algorithm family '{}'", name));
}

std::string ModeName(Mode mode) {
  return mode == Mode::kFullBatch ? "full-batch" : "stochastic";
}

Mode ParseMode(std::string_view name) {
  if (name == "full-batch" || name == "full_batch") return Mode::kFullBatch;
  if (name == "stochastic") return Mode::kStochastic;
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("unknown mode '{}'", name));
}

std::string AlgorithmSpec::ShortName() const {
  return (mode == Mode::kStochastic ? "s" : "") + FamilyName(family);
}

InnerMax NumericInnerMax(const Objective& obj, const Vector& w, const Vector& z,
                         const InnerSolverOptions& options) {
  obj.CheckDim(w, "w");
  obj.CheckDim(z, "z");
  const double ell = obj.constants().smoothness;
  const double step = std::isfinite(ell) && ell > 0.0 ? 1.0 / ell : 1e-2;
  Vector theta = Vector::Zero(obj.dim());
  double residual = kUnbounded;
  for (long k = 0; k < options.max_iterations; ++k) {
    Vector next =
        ProjectBall(theta + step * obj.GradTheta(w, theta, z), obj.rho_theta());
    residual = (next - theta).norm() / step;
    theta = std::move(next);
    if (residual <= options.tolerance) {
      return {theta, obj.Value(w, theta, z)};
    }
    if (!theta.allFinite()) break;
  }
  throw Error(ErrorCode::kSolverDidNotConverge,
              "inner maximization did not converge")
      .WithResidual(residual);
}

Iterate GdaStep(const Objective& obj, const Vector& w, const Vector& theta,
                const Vector& z, double alpha_w, double alpha_theta) {
  CheckStep(alpha_w, "alpha_w");
  CheckStep(alpha_theta, "alpha_theta");
  Vector gw = obj.GradW(w, theta, z);
  Vector gt = obj.GradTheta(w, theta, z);
  return {ProjectBall(w - alpha_w * gw, obj.rho_w()),
          ProjectBall(theta + alpha_theta * gt, obj.rho_theta())};
}

Iterate GdmaxStep(const Objective& obj, const Vector& w, const Vector& z,
                  double alpha_w, const InnerSolverOptions& options) {
  CheckStep(alpha_w, "alpha_w");
  InnerMax inner = obj.HasClosedFormMax() ? obj.InnerMaximize(w, z)
                                          : NumericInnerMax(obj, w, z, options);
  Vector gw = obj.GradW(w, inner.theta_star, z);
  return {ProjectBall(w - alpha_w * gw, obj.rho_w()),
          std::move(inner.theta_star)};
}

double PpmResidual(const Objective& obj, const Iterate& from, const Iterate& to,
                   const Vector& z, double eta) {
  return (to.w - from.w + eta * obj.GradW(to.w, to.theta, z)).norm() +
         (to.theta - from.theta - eta * obj.GradTheta(to.w, to.theta, z))
             .norm();
}

Iterate PpmStep(const Objective& obj, const Vector& w, const Vector& theta,
                const Vector& z, double eta, const ProxSolverOptions& options) {
  CheckStep(eta, "eta");
  obj.CheckDims(w, theta, z);
  Iterate next;
  if (obj.kind() != ObjectiveKind::kToyNcSc) {
    next = LinearQuadraticProx(obj, w, theta, z, eta);
  } else {
    // Damped fixed-point iteration on
    //   w' = w - eta grad_w f(w', t'),  t' = t + eta grad_theta f(w', t').
    const Iterate start{w, theta};
    next = start;
    const double beta = options.damping;
    double residual = PpmResidual(obj, start, next, z, eta);
    long k = 0;
    for (; k < options.max_iterations && residual > options.tolerance; ++k) {
      Vector fw = w - eta * obj.GradW(next.w, next.theta, z);
      Vector ft = theta + eta * obj.GradTheta(next.w, next.theta, z);
      next.w = (1.0 - beta) * next.w + beta * fw;
      next.theta = (1.0 - beta) * next.theta + beta * ft;
      residual = PpmResidual(obj, start, next, z, eta);
      if (!std::isfinite(residual)) break;
    }
    if (!(residual <= options.tolerance)) {
      throw Error(
          ErrorCode::kSolverDidNotConverge,
          fmt::format("proximal step did not converge in {} iterations", k))
          .WithResidual(residual);
    }
  }
  next.w = ProjectBall(next.w, obj.rho_w());
  next.theta = ProjectBall(next.theta, obj.rho_theta());
  return next;
}

Iterate PpmaxStep(const Objective& obj, const Vector& w, const Vector& z,
                  double eta, const ProxSolverOptions& options) {
  CheckStep(eta, "eta");
  obj.CheckDim(w, "w");
  obj.CheckDim(z, "z");
  Vector w_next;
  switch (obj.kind()) {
    case ObjectiveKind::kBilinear: {
      if (!obj.theta_bounded()) {
        throw Error(ErrorCode::kNoClosedForm,
                    "ppmax on bilinear needs a bounded theta-set");
      }
      // f_max = w'z + rho |w|: prox is shrinkage of w - eta z.
      const Vector v = w - eta * z;
      const double norm = v.norm();
      const double keep =
          norm > 0.0 ? std::max(0.0, 1.0 - eta * obj.rho_theta() / norm) : 0.0;
      w_next = keep * v;
      break;
    }
    case ObjectiveKind::kScScQuadratic: {
      // f_max = w'z + (mu/2)|w|^2 + h(|w|) with h(r) = r^2/(2 mu) while
      // r <= mu rho_theta and rho_theta r - mu rho_theta^2 / 2 beyond.
      // Both regimes give a prox that is a radial shrinkage of v.
      const double mu = obj.mu();
      const Vector v = w - eta * z;
      const Vector interior = v / (1.0 + eta * (mu + 1.0 / mu));
      if (interior.norm() <= mu * obj.rho_theta()) {
        w_next = interior;
      } else {
        const double norm = v.norm();
        const double r =
            std::max(0.0, norm - eta * obj.rho_theta()) / (1.0 + eta * mu);
        w_next = norm > 0.0 ? Vector(v * (r / norm)) : Vector(v);
      }
      break;
    }
    case ObjectiveKind::kToyNcSc: {
      const double beta = options.damping;
      w_next = w;
      auto residual_at = [&](const Vector& x) {
        return (x - w + eta * obj.MaxGradient(x, z)).norm();
      };
      double residual = residual_at(w_next);
      long k = 0;
      for (; k < options.max_iterations && residual > options.tolerance; ++k) {
        w_next = (1.0 - beta) * w_next +
                 beta * (w - eta * obj.MaxGradient(w_next, z));
        residual = residual_at(w_next);
        if (!std::isfinite(residual)) break;
      }
      if (!(residual <= options.tolerance)) {
        throw Error(
            ErrorCode::kSolverDidNotConverge,
            fmt::format("ppmax step did not converge in {} iterations", k))
            .WithResidual(residual);
      }
      break;
    }
  }
  w_next = ProjectBall(w_next, obj.rho_w());
  Vector theta_star = obj.InnerMaximize(w_next, z).theta_star;
  return {std::move(w_next), std::move(theta_star)};
}

Iterate ApplyStep(const AlgorithmSpec& spec, const Objective& obj, long t,
                  const Iterate& current, const Vector& z,
                  const InnerSolverOptions& inner,
                  const ProxSolverOptions& prox) {
  switch (spec.family) {
    case Family::kGda:
      return GdaStep(obj, current.w, current.theta, z, spec.step_w.At(t),
                     spec.step_theta.At(t));
    case Family::kGdmax:
      return GdmaxStep(obj, current.w, z, spec.step_w.At(t), inner);
    case Family::kPpm:
      return PpmStep(obj, current.w, current.theta, z, spec.eta.At(t), prox);
    case Family::kPpmax:
      return PpmaxStep(obj, current.w, z, spec.eta.At(t), prox);
  }
  return current;
}

std::vector<int> SampleIndexStream(int n, long iterations, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kEmptyDataset, "cannot sample from n = 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> out(static_cast<std::size_t>(std::max(0L, iterations)));
  for (int& i : out) i = pick(rng);
  return out;
}

Trajectory Run(const AlgorithmSpec& spec, const Objective& obj,
               const Dataset& data, const Vector& w0, const Vector& theta0,
               long iterations, std::uint64_t seed, const RunOptions& options) {
  if (iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "iteration count must be >= 0");
  }
  if (options.stride < 1) {
    throw Error(ErrorCode::kInvalidArgument, "record stride must be >= 1");
  }
  obj.CheckDim(w0, "w0");
  obj.CheckDim(theta0, "theta0");
  obj.CheckDim(data.mean(), "dataset samples");
  constexpr double kFeasibilitySlack = 1e-12;
  if (w0.norm() > obj.rho_w() + kFeasibilitySlack ||
      theta0.norm() > obj.rho_theta() + kFeasibilitySlack) {
    throw Error(ErrorCode::kInvalidArgument,
                "initialization lies outside the feasible sets");
  }

  Trajectory traj;
  traj.seed = seed;
  if (spec.mode == Mode::kStochastic) {
    if (!options.indices.empty()) {
      if (static_cast<long>(options.indices.size()) < iterations) {
        throw Error(ErrorCode::kInvalidArgument,
                    "shared index stream is shorter than the run");
      }
      traj.sampled_indices.assign(options.indices.begin(),
                                  options.indices.begin() + iterations);
    } else {
      traj.sampled_indices = SampleIndexStream(data.size(), iterations, seed);
    }
  }

  auto record = [&traj](long t, const Iterate& it, const Vector& w_bar,
                        const Vector& theta_bar) {
    traj.t.push_back(t);
    traj.w.push_back(it.w);
    traj.theta.push_back(it.theta);
    traj.w_bar.push_back(w_bar);
    traj.theta_bar.push_back(theta_bar);
  };

  Iterate current{w0, theta0};
  record(0, current, w0, theta0);
  Vector w_sum = Vector::Zero(obj.dim());
  Vector theta_sum = Vector::Zero(obj.dim());
  Vector z_sample;
  for (long t = 1; t <= iterations; ++t) {
    const Vector* z = &data.mean();
    if (spec.mode == Mode::kStochastic) {
      z_sample = data.sample(traj.sampled_indices[t - 1]);
      z = &z_sample;
    }
    try {
      current =
          ApplyStep(spec, obj, t, current, *z, options.inner, options.prox);
    } catch (Error& e) {
      e.WithIteration(t);
      throw;
    }
    w_sum += current.w;
    theta_sum += current.theta;
    if (t % options.stride == 0 || t == iterations) {
      const double inv = 1.0 / static_cast<double>(t);
      record(t, current, w_sum * inv, theta_sum * inv);
    }
  }
  return traj;
}

Iterate AverageIterates(const Trajectory& traj, long T) {
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.t[k] == T) {
      if (T == 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "average of iterates needs T >= 1");
      }
      return {traj.w_bar[k], traj.theta_bar[k]};
    }
  }
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("iteration {} was not recorded", T));
}

void WriteTrajectoryCsv(const Trajectory& traj, std::ostream& out) {
  if (traj.size() == 0) return;
  const Eigen::Index d = traj.w.front().size();
  fmt::memory_buffer buf;
  auto it = std::back_inserter(buf);
  fmt::format_to(it, "t");
  for (Eigen::Index j = 0; j < d; ++j) fmt::format_to(it, ",w_{}", j);
  for (Eigen::Index j = 0; j < d; ++j) fmt::format_to(it, ",theta_{}", j);
  buf.push_back('\n');
  for (std::size_t k = 0; k < traj.size(); ++k) {
    fmt::format_to(it, "{}", traj.t[k]);
    for (Eigen::Index j = 0; j < d; ++j) {
      fmt::format_to(it, ",{:.17g}", traj.w[k](j));
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      fmt::format_to(it, ",{:.17g}", traj.theta[k](j));
    }
    buf.push_back('\n');
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace mmlab
