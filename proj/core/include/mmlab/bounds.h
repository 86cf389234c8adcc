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

#ifndef MMLAB_BOUNDS_H_
#define MMLAB_BOUNDS_H_

#include <string>
#include <utility>
#include <vector>

#include "mmlab/objectives.h"
#include "mmlab/optimizers.h"

namespace mmlab {

// A bound's value together with the preconditions it was derived under.
// Values are computed even when a condition fails so that sweeps across
// invalid regimes can still be plotted.
struct BoundReport {
  struct Condition {
    std::string description;
    bool satisfied = false;
  };

  std::string name;
  double value = 0.0;
  std::vector<Condition> conditions;

  bool conditions_ok() const;
};

enum class ExpansivityRegime {
  kNonconvexGda,
  kNonconvexPpm,
  kConvexConcaveGda,
  kConvexConcavePpm,
  kScScGda,
  kScScPpm,
};

std::string ExpansivityRegimeName(ExpansivityRegime regime);

// Expansivity coefficient of one update map. For the PPM regimes pass eta
// as both stepsizes.
BoundReport Lemma1Coefficient(ExpansivityRegime regime,
                              const Constants& constants, double alpha_w,
                              double alpha_theta);
inline BoundReport Lemma1Coefficient(ExpansivityRegime regime,
                                     const Constants& constants, double step) {
  return Lemma1Coefficient(regime, constants, step, step);
}

// Generalization bounds for strongly-convex strongly-concave objectives:
//   GDA   2 L L_w / ((mu - alpha ell^2/2) n)     GDmax  2 L_w^2 / (mu n)
//   PPM   2 L L_w / (mu n)                       PPmax  2 L_w^2 / (mu n)
// `step` is alpha_w for GDA/GDmax and ignored otherwise. Throws
// kUndefinedBound when mu == 0.
BoundReport Thm2Bound(Family family, const Constants& constants, long n,
                      double step);

// Geometric-series sum for constant-step GDA on convex-concave objectives:
//   (2 alpha L / n) ((1 + a^2 ell^2)^((T+1)/2) - 1) / (sqrt(1 + a^2 ell^2) - 1)
// multiplied by L_w.
BoundReport Remark1Bound(double alpha, const Constants& constants, long n,
                         long T);

// (alpha / n) (1 + alpha^2)^(T/2) |dz|: the norm of a single perturbation
// (alpha/n) dz injected into the w-coordinates and then propagated through T
// unprojected bilinear GDA steps. See BilinearPersistentDelta in oracles.h
// for neighbouring datasets, where the perturbation recurs every step.
double Remark1ExactBilinearDelta(double alpha, long n, long T, double dz_norm);

// (2 L L_w / n) sum_{t=1..T} eta_t; L_w^2 replaces L L_w for PPmax.
BoundReport Thm3Bound(const Schedule& eta, const Constants& constants, long n,
                      long T, bool ppmax = false);

// D^2 / (2 eta T) for the averaged iterates of (stochastic) PPM.
BoundReport Thm4Bound(double D, double eta, long T);

struct Cor1Result {
  double iterations = 0.0;  // T_PPM, real-valued
  double excess_bound = 0.0;
};

// T = sqrt(n D^2 / (2 eta^2 L L_w)), excess <= sqrt(2 D^2 L L_w / n).
Cor1Result Cor1Schedule(long n, double D, double eta,
                        const Constants& constants, bool ppmax = false);

struct Thm5Result {
  BoundReport sgda;
  BoundReport sgdmax;
};

// Non-convex strongly-concave SGDA (alpha_w = c/t, alpha_theta = c r^2/t)
// and SGDmax (alpha_w = c/t). The SGDmax bound uses n in the denominator;
// some restatements carry n - 1 instead.
Thm5Result Thm5Bounds(double c, double r, const Constants& constants, long n,
                      long T);

// Non-convex non-concave SGDA with max(alpha_w, alpha_theta) <= c/t.
BoundReport Thm6Bound(double c, const Constants& constants, long n, long T);

// T-exponents of the bounds above.
double Thm5SgdaExponent(double c, double r, double ell);
double Thm5SgdmaxExponent(double c, double kappa, double ell);
double Thm6Exponent(double c, double ell);

// ell + ell^2 / (2 mu): smoothness of f_max for a mu-strongly-concave
// inner problem. Throws kUndefinedBound when mu == 0.
double Lemma6Smoothness(const Constants& constants);

}  // namespace mmlab

#endif  // MMLAB_BOUNDS_H_
