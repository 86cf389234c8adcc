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

#include "mmlab/objectives.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "mmlab/error.h"

namespace mmlab {

std::optional<double> Constants::kappa() const {
  if (mu <= 0.0) return std::nullopt;
  return smoothness / mu;
}

void Constants::Validate() const {
  if (lipschitz < 0.0 || lipschitz_w < 0.0 || mu < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "Lipschitz constants and mu must be non-negative");
  }
  if (lipschitz_w > lipschitz) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("L_w={} exceeds L={}", lipschitz_w, lipschitz));
  }
  if (!(smoothness > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ell must be positive");
  }
  if (mu > smoothness) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("mu={} exceeds ell={}", mu, smoothness));
  }
}

std::string ObjectiveKindName(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kBilinear:
      return "bilinear";
    case ObjectiveKind::kScScQuadratic:
      return "scsc";
    case ObjectiveKind::kToyNcSc:
      return "toy-ncsc";
  }
  return "unknown";
}

ObjectiveKind ParseObjectiveKind(const std::string& name) {
  if (name == "bilinear") return ObjectiveKind::kBilinear;
  if (name == "scsc" || name == "scsc-quadratic") {
    return ObjectiveKind::kScScQuadratic;
  }
  if (name == "toy-ncsc" || name == "ncsc") return ObjectiveKind::kToyNcSc;
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("unknown objective kind '{}'", name));
}

Objective::Objective(ObjectiveKind kind, int dim, double mu, double rho_w,
                     double rho_theta)
    : kind_(kind), dim_(dim), mu_(mu), rho_w_(rho_w), rho_theta_(rho_theta) {
  if (dim < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "objective dimension must be >= 1");
  }
  if (!(rho_w > 0.0) || !(rho_theta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "feasible radii must be positive");
  }
  if (kind != ObjectiveKind::kBilinear && !(mu > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} requires mu > 0", ObjectiveKindName(kind)));
  }
  constants_.mu = mu;
  constants_.smoothness = AnalyticSmoothness(*this);
}

Objective Objective::Bilinear(int dim, double rho_w, double rho_theta) {
  return Objective(ObjectiveKind::kBilinear, dim, 0.0, rho_w, rho_theta);
}

Objective Objective::ScScQuadratic(int dim, double mu, double rho_w,
                                   double rho_theta) {
  return Objective(ObjectiveKind::kScScQuadratic, dim, mu, rho_w, rho_theta);
}

Objective Objective::ToyNcSc(int dim, double mu, double rho_w,
                             double rho_theta) {
  return Objective(ObjectiveKind::kToyNcSc, dim, mu, rho_w, rho_theta);
}

ConvexityClass Objective::convexity_class() const {
  switch (kind_) {
    case ObjectiveKind::kBilinear:
      return {ConvexityClass::Tag::kConvexConcave, 0.0};
    case ObjectiveKind::kScScQuadratic:
      return {ConvexityClass::Tag::kStronglyConvexStronglyConcave, mu_};
    case ObjectiveKind::kToyNcSc:
      return {ConvexityClass::Tag::kNonconvexStronglyConcave, mu_};
  }
  return {};
}

Objective Objective::WithConstants(const Constants& constants) const {
  constants.Validate();
  Objective copy = *this;
  copy.constants_ = constants;
  return copy;
}

Objective Objective::WithRadii(double rho_w, double rho_theta) const {
  Objective copy(kind_, dim_, mu_, rho_w, rho_theta);
  return copy;
}

void Objective::CheckDim(const Vector& v, const char* what) const {
  if (v.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("{} has dimension {}, objective expects {}", what,
                            v.size(), dim_));
  }
}

void Objective::CheckDims(const Vector& w, const Vector& theta,
                          const Vector& z) const {
  CheckDim(w, "w");
  CheckDim(theta, "theta");
  CheckDim(z, "z");
}

double Objective::Value(const Vector& w, const Vector& theta,
                        const Vector& z) const {
  CheckDims(w, theta, z);
  switch (kind_) {
    case ObjectiveKind::kBilinear:
      return w.dot(z - theta);
    case ObjectiveKind::kScScQuadratic:
      return w.dot(z - theta) +
             0.5 * mu_ * (w.squaredNorm() - theta.squaredNorm());
    case ObjectiveKind::kToyNcSc:
      return w.array().sin().matrix().dot(theta) + theta.dot(z) -
             0.5 * mu_ * theta.squaredNorm();
  }
  return 0.0;
}

Vector Objective::GradW(const Vector& w, const Vector& theta,
                        const Vector& z) const {
  CheckDims(w, theta, z);
  switch (kind_) {
    case ObjectiveKind::kBilinear:
      return z - theta;
    case ObjectiveKind::kScScQuadratic:
      return z - theta + mu_ * w;
    case ObjectiveKind::kToyNcSc:
      return (w.array().cos() * theta.array()).matrix();
  }
  return Vector();
}

Vector Objective::GradTheta(const Vector& w, const Vector& theta,
                            const Vector& z) const {
  CheckDims(w, theta, z);
  switch (kind_) {
    case ObjectiveKind::kBilinear:
      return -w;
    case ObjectiveKind::kScScQuadratic:
      return -w - mu_ * theta;
    case ObjectiveKind::kToyNcSc:
      return w.array().sin().matrix() + z - mu_ * theta;
  }
  return Vector();
}

bool Objective::HasClosedFormMax() const {
  return kind_ != ObjectiveKind::kBilinear || theta_bounded();
}

InnerMax Objective::InnerMaximize(const Vector& w, const Vector& z) const {
  CheckDim(w, "w");
  CheckDim(z, "z");
  InnerMax out;
  switch (kind_) {
    case ObjectiveKind::kBilinear: {
      if (!theta_bounded()) {
        throw Error(ErrorCode::kNoClosedForm,
                    "no closed-form maximizer: bilinear objective over an "
                    "unbounded theta-set");
      }
      // Linear in theta: the maximizer sits on the boundary opposite to w.
      // Every feasible theta is optimal at w = 0; return the origin.
      const double norm = w.norm();
      out.theta_star = norm > 0.0 ? Vector(-rho_theta_ / norm * w)
                                  : Vector(Vector::Zero(dim_));
      out.f_max = w.dot(z) + rho_theta_ * norm;
      return out;
    }
    case ObjectiveKind::kScScQuadratic:
      // -(mu/2)|theta + w/mu|^2 + const: the ball maximizer is the
      // projection of the unconstrained one.
      out.theta_star = ProjectBall(-w / mu_, rho_theta_);
      break;
    case ObjectiveKind::kToyNcSc:
      out.theta_star =
          ProjectBall((w.array().sin().matrix() + z) / mu_, rho_theta_);
      break;
  }
  out.f_max = Value(w, out.theta_star, z);
  return out;
}

Vector Objective::MaxGradient(const Vector& w, const Vector& z) const {
  return GradW(w, InnerMaximize(w, z).theta_star, z);
}

double AnalyticSmoothness(const Objective& obj) {
  const double mu = obj.mu();
  switch (obj.kind()) {
    case ObjectiveKind::kBilinear:
      return 1.0;
    case ObjectiveKind::kScScQuadratic:
      return std::sqrt(1.0 + mu * mu);
    case ObjectiveKind::kToyNcSc: {
      if (!obj.theta_bounded()) return kUnbounded;
      // The Hessian is block diagonal over coordinate pairs (w_i, theta_i):
      //   [[-sin(w_i) theta_i, cos(w_i)], [cos(w_i), -mu]].
      // Its spectral norm |a - mu|/2 + sqrt(((a + mu)/2)^2 + c^2) is convex
      // in a = -sin(w_i) theta_i and increasing in |c| <= 1, so the sup over
      // |a| <= A is attained at a = +-A.
      const double sin_cap = obj.w_bounded() ? std::min(1.0, obj.rho_w()) : 1.0;
      const double a_max = obj.rho_theta() * sin_cap;
      auto block_norm = [mu](double a) {
        return std::abs(a - mu) / 2.0 +
               std::sqrt(0.25 * (a + mu) * (a + mu) + 1.0);
      };
      return std::max(block_norm(a_max), block_norm(-a_max));
    }
  }
  return kUnbounded;
}

Constants AnalyticConstants(const Objective& obj, double rho_z) {
  if (!obj.w_bounded() || !obj.theta_bounded() || !std::isfinite(rho_z)) {
    throw Error(ErrorCode::kInvalidArgument,
                "analytic constants need finite radii for w, theta and z");
  }
  const double rw = obj.rho_w();
  const double rt = obj.rho_theta();
  const double mu = obj.mu();
  double grad_w = 0.0;
  double grad_theta = 0.0;
  switch (obj.kind()) {
    case ObjectiveKind::kBilinear:
      grad_w = rho_z + rt;
      grad_theta = rw;
      break;
    case ObjectiveKind::kScScQuadratic:
      grad_w = rho_z + rt + mu * rw;
      grad_theta = rw + mu * rt;
      break;
    case ObjectiveKind::kToyNcSc:
      grad_w = rt;
      grad_theta = std::min(rw, std::sqrt(static_cast<double>(obj.dim()))) +
                   rho_z + mu * rt;
      break;
  }
  Constants c;
  c.lipschitz_w = grad_w;
  c.lipschitz = std::hypot(grad_w, grad_theta);
  c.smoothness = AnalyticSmoothness(obj);
  c.mu = mu;
  return c;
}

Vector ProjectBall(const Vector& u, double rho) {
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "projection radius must be > 0");
  }
  if (!std::isfinite(rho)) return u;
  const double norm = u.norm();
  if (norm <= rho) return u;
  return u * (rho / norm);
}

double EmpiricalRisk(const Objective& obj, const Vector& w, const Vector& theta,
                     const Dataset& data) {
  double sum = 0.0;
  for (int i = 0; i < data.size(); ++i) {
    sum += obj.Value(w, theta, data.sample(i));
  }
  return sum / data.size();
}

double WorstCaseEmpiricalRisk(const Objective& obj, const Vector& w,
                              const Dataset& data) {
  return obj.InnerMaximize(w, data).f_max;
}

double WorstCaseRisk(const Objective& obj, const Vector& w,
                     const Vector& population_mean) {
  return obj.InnerMaximize(w, population_mean).f_max;
}

double GeneralizationRiskClosedForm(const Objective& obj, const Vector& w,
                                    const Dataset& data,
                                    const Vector& population_mean) {
  if (obj.kind() == ObjectiveKind::kToyNcSc) {
    throw Error(ErrorCode::kNoClosedForm,
                "no closed-form generalization risk for toy-ncsc");
  }
  obj.CheckDim(w, "w");
  obj.CheckDim(population_mean, "population_mean");
  obj.CheckDim(data.mean(), "dataset samples");
  return w.dot(population_mean - data.mean());
}

}  // namespace mmlab
