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

#ifndef MMLAB_OBJECTIVES_H_
#define MMLAB_OBJECTIVES_H_

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "mmlab/dataset.h"

namespace mmlab {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Lipschitz / smoothness / curvature parameters consumed by the bounds.
//   lipschitz    L    joint Lipschitz constant in (w, theta)
//   lipschitz_w  L_w  Lipschitz constant in w alone
//   smoothness   ell  Lipschitz constant of the joint gradient field
//   mu                strong convexity / concavity modulus (0 if none)
struct Constants {
  double lipschitz = 0.0;
  double lipschitz_w = 0.0;
  double smoothness = 1.0;
  double mu = 0.0;

  // ell / mu; empty when mu == 0.
  std::optional<double> kappa() const;

  // Throws kInvalidArgument if the invariants L_w <= L, ell > 0 and
  // mu <= ell do not hold.
  void Validate() const;
};

struct ConvexityClass {
  enum class Tag {
    kConvexConcave,
    kStronglyConvexStronglyConcave,
    kNonconvexStronglyConcave,
    kNonconvexNonconcave,
  };
  Tag tag = Tag::kConvexConcave;
  double mu = 0.0;
};

enum class ObjectiveKind { kBilinear, kScScQuadratic, kToyNcSc };

std::string ObjectiveKindName(ObjectiveKind kind);
ObjectiveKind ParseObjectiveKind(const std::string& name);

// Maximizer of the objective over the feasible theta-set at fixed w.
struct InnerMax {
  Vector theta_star;
  double f_max = 0.0;
};

// The three benchmark minimax costs f(w, theta; z):
//
//   Bilinear       w'(z - theta)
//   ScScQuadratic  w'(z - theta) + (mu/2)(|w|^2 - |theta|^2)
//   ToyNcSc        sin(w)'theta + theta'z - (mu/2)|theta|^2
//
// All three are affine in z, so the objective averaged over a dataset equals
// the objective evaluated at the sample mean. The dataset overloads below
// rely on that identity.
//
// Feasible sets are Euclidean balls of radius rho_w and rho_theta
// (kUnbounded for the whole space). Objective is an immutable value type.
class Objective {
 public:
  static Objective Bilinear(int dim, double rho_w = kUnbounded,
                            double rho_theta = kUnbounded);
  static Objective ScScQuadratic(int dim, double mu, double rho_w = kUnbounded,
                                 double rho_theta = kUnbounded);
  static Objective ToyNcSc(int dim, double mu, double rho_w = kUnbounded,
                           double rho_theta = kUnbounded);

  ObjectiveKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double mu() const { return mu_; }
  double rho_w() const { return rho_w_; }
  double rho_theta() const { return rho_theta_; }
  bool w_bounded() const { return rho_w_ < kUnbounded; }
  bool theta_bounded() const { return rho_theta_ < kUnbounded; }
  ConvexityClass convexity_class() const;

  // Constants attached by the experiment configuration. Defaults carry only
  // the analytic smoothness and mu; Lipschitz constants are zero until set.
  const Constants& constants() const { return constants_; }
  Objective WithConstants(const Constants& constants) const;
  Objective WithRadii(double rho_w, double rho_theta) const;

  double Value(const Vector& w, const Vector& theta, const Vector& z) const;
  Vector GradW(const Vector& w, const Vector& theta, const Vector& z) const;
  Vector GradTheta(const Vector& w, const Vector& theta, const Vector& z) const;

  // Closed-form argmax over the feasible theta-ball. Bilinear with an
  // unbounded theta-set has no maximizer (f_max = +inf for w != 0) and
  // raises kNoClosedForm.
  bool HasClosedFormMax() const;
  InnerMax InnerMaximize(const Vector& w, const Vector& z) const;
  InnerMax InnerMaximize(const Vector& w, const Dataset& data) const {
    return InnerMaximize(w, data.mean());
  }

  // Gradient of f_max(w) = max_theta f(w, theta; z), which by Danskin's
  // theorem is grad_w f evaluated at the maximizer. For Bilinear this is a
  // subgradient at w = 0.
  Vector MaxGradient(const Vector& w, const Vector& z) const;

  // Checks w, theta, z all have dimension dim(); throws kDimensionMismatch.
  void CheckDims(const Vector& w, const Vector& theta, const Vector& z) const;
  void CheckDim(const Vector& v, const char* what) const;

 private:
  Objective(ObjectiveKind kind, int dim, double mu, double rho_w,
            double rho_theta);

  ObjectiveKind kind_;
  int dim_;
  double mu_;
  double rho_w_;
  double rho_theta_;
  Constants constants_;
};

// Upper bounds on L, L_w and ell over the feasible balls when samples obey
// |z| <= rho_z. Requires finite radii.
Constants AnalyticConstants(const Objective& obj, double rho_z);

// Exact smoothness ell of the objective's gradient field over the feasible
// set (infinite for ToyNcSc with an unbounded theta-ball).
double AnalyticSmoothness(const Objective& obj);

Vector ProjectBall(const Vector& u, double rho);

// (1/n) sum_i f(w, theta; z_i).
double EmpiricalRisk(const Objective& obj, const Vector& w, const Vector& theta,
                     const Dataset& data);

// max_theta R_S(w, theta), via the closed-form maximizer.
double WorstCaseEmpiricalRisk(const Objective& obj, const Vector& w,
                              const Dataset& data);

// max_theta E[f(w, theta; Z)] for a population with the given mean.
double WorstCaseRisk(const Objective& obj, const Vector& w,
                     const Vector& population_mean);

// w'(E[Z] - mean(S)). Valid for Bilinear and ScScQuadratic, where the
// theta-dependent terms of the worst-case risks cancel.
double GeneralizationRiskClosedForm(const Objective& obj, const Vector& w,
                                    const Dataset& data,
                                    const Vector& population_mean);

}  // namespace mmlab

#endif  // MMLAB_OBJECTIVES_H_
