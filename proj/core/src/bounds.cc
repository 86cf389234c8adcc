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

#include "mmlab/bounds.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "mmlab/error.h"

namespace mmlab {
namespace {

void RequirePositiveMu(const Constants& c, const char* what) {
  if (!(c.mu > 0.0)) {
    throw Error(ErrorCode::kUndefinedBound,
                fmt::format("{} is undefined for mu = 0", what));
  }
}

BoundReport::Condition Cond(std::string description, bool satisfied) {
  return {std::move(description), satisfied};
}

}  // namespace

bool BoundReport::conditions_ok() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const Condition& c) { return c.satisfied; });
}

std::string ExpansivityRegimeName(ExpansivityRegime regime) {
  switch (regime) {
    case ExpansivityRegime::kNonconvexGda:
      return "nonconvex-gda";
    case ExpansivityRegime::kNonconvexPpm:
      return "nonconvex-ppm";
    case ExpansivityRegime::kConvexConcaveGda:
      return "cc-gda";
    case ExpansivityRegime::kConvexConcavePpm:
      return "cc-ppm";
    case ExpansivityRegime::kScScGda:
      return "scsc-gda";
    case ExpansivityRegime::kScScPpm:
      return "scsc-ppm";
  }
  return "unknown";
}

BoundReport Lemma1Coefficient(ExpansivityRegime regime,
                              const Constants& constants, double alpha_w,
                              double alpha_theta) {
  const double ell = constants.smoothness;
  const double mu = constants.mu;
  BoundReport r;
  r.name = "lemma1_" + ExpansivityRegimeName(regime);
  switch (regime) {
    case ExpansivityRegime::kNonconvexGda:
      r.value = 1.0 + ell * std::max(alpha_w, alpha_theta);
      break;
    case ExpansivityRegime::kNonconvexPpm:
      r.value = 1.0 / (1.0 - ell * alpha_w);
      r.conditions.push_back(Cond("eta < 1/ell", alpha_w * ell < 1.0));
      break;
    case ExpansivityRegime::kConvexConcaveGda:
      r.value = std::sqrt(1.0 + ell * ell * alpha_w * alpha_w);
      r.conditions.push_back(
          Cond("alpha_w == alpha_theta", alpha_w == alpha_theta));
      break;
    case ExpansivityRegime::kConvexConcavePpm:
      r.value = 1.0;
      r.conditions.push_back(Cond("eta > 0", alpha_w > 0.0));
      break;
    case ExpansivityRegime::kScScGda:
      r.value = 1.0 - alpha_w * mu + alpha_w * alpha_w * ell * ell / 2.0;
      r.conditions.push_back(
          Cond("alpha_w == alpha_theta", alpha_w == alpha_theta));
      r.conditions.push_back(
          Cond("alpha_w <= 2 mu / ell^2", alpha_w * ell * ell <= 2.0 * mu));
      break;
    case ExpansivityRegime::kScScPpm:
      r.value = 1.0 / (1.0 + mu * alpha_w);
      r.conditions.push_back(Cond("mu > 0", mu > 0.0));
      break;
  }
  return r;
}

BoundReport Thm2Bound(Family family, const Constants& constants, long n,
                      double step) {
  RequirePositiveMu(constants, "thm2 bound");
  const double L = constants.lipschitz;
  const double Lw = constants.lipschitz_w;
  const double mu = constants.mu;
  const double ell = constants.smoothness;
  const double dn = static_cast<double>(n);
  BoundReport r;
  r.name = "thm2_" + FamilyName(family);
  r.conditions.push_back(Cond("n >= 1", n >= 1));
  switch (family) {
    case Family::kGda: {
      const double denom = mu - step * ell * ell / 2.0;
      r.value = 2.0 * L * Lw / (denom * dn);
      r.conditions.push_back(
          Cond("alpha_w <= mu/ell^2", step * ell * ell <= mu));
      break;
    }
    case Family::kGdmax:
      r.value = 2.0 * Lw * Lw / (mu * dn);
      r.conditions.push_back(
          Cond("alpha_w <= mu/ell^2", step * ell * ell <= mu));
      break;
    case Family::kPpm:
      r.value = 2.0 * L * Lw / (mu * dn);
      break;
    case Family::kPpmax:
      r.value = 2.0 * Lw * Lw / (mu * dn);
      break;
  }
  return r;
}

BoundReport Remark1Bound(double alpha, const Constants& constants, long n,
                         long T) {
  const double ell = constants.smoothness;
  // log(q) for q = sqrt(1 + alpha^2 ell^2); expm1 keeps small alpha accurate.
  const double log_q = 0.5 * std::log1p(alpha * alpha * ell * ell);
  const double series =
      std::expm1(static_cast<double>(T + 1) * log_q) / std::expm1(log_q);
  BoundReport r;
  r.name = "remark1";
  r.value = 2.0 * alpha * constants.lipschitz / static_cast<double>(n) *
            series * constants.lipschitz_w;
  r.conditions.push_back(Cond("alpha > 0", alpha > 0.0));
  return r;
}

double Remark1ExactBilinearDelta(double alpha, long n, long T, double dz_norm) {
  return alpha / static_cast<double>(n) *
         std::pow(1.0 + alpha * alpha, static_cast<double>(T) / 2.0) * dz_norm;
}

BoundReport Thm3Bound(const Schedule& eta, const Constants& constants, long n,
                      long T, bool ppmax) {
  double eta_sum = 0.0;
  if (eta.kind() == Schedule::Kind::kConstant) {
    eta_sum = eta.value() * static_cast<double>(std::max(0L, T));
  } else {
    for (long t = 1; t <= T; ++t) eta_sum += eta.At(t);
  }
  const double lip = ppmax ? constants.lipschitz_w * constants.lipschitz_w
                           : constants.lipschitz * constants.lipschitz_w;
  BoundReport r;
  r.name = ppmax ? "thm3_ppmax" : "thm3_ppm";
  r.value = 2.0 * lip / static_cast<double>(n) * eta_sum;
  r.conditions.push_back(Cond("n >= 1", n >= 1));
  return r;
}

BoundReport Thm4Bound(double D, double eta, long T) {
  BoundReport r;
  r.name = "thm4";
  r.value = D * D / (2.0 * eta * static_cast<double>(T));
  r.conditions.push_back(Cond("eta > 0", eta > 0.0));
  r.conditions.push_back(Cond("T >= 1", T >= 1));
  return r;
}

Cor1Result Cor1Schedule(long n, double D, double eta,
                        const Constants& constants, bool ppmax) {
  if (n < 1 || !(D > 0.0) || !(eta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "cor1 schedule needs n >= 1, D > 0 and eta > 0");
  }
  const double lip = ppmax ? constants.lipschitz_w * constants.lipschitz_w
                           : constants.lipschitz * constants.lipschitz_w;
  if (!(lip > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "cor1 schedule needs positive Lipschitz constants");
  }
  const double dn = static_cast<double>(n);
  Cor1Result out;
  out.iterations = std::sqrt(dn * D * D / (2.0 * eta * eta * lip));
  out.excess_bound = std::sqrt(2.0 * D * D * lip / dn);
  return out;
}

double Thm5SgdaExponent(double c, double r, double ell) {
  const double x = (r + 1.0) * c * ell;
  return x / (x + 1.0);
}

double Thm5SgdmaxExponent(double c, double kappa, double ell) {
  const double x = (kappa + 2.0) * ell * c;
  return x / (x + 2.0);
}

double Thm6Exponent(double c, double ell) { return ell * c / (ell * c + 1.0); }

Thm5Result Thm5Bounds(double c, double r, const Constants& constants, long n,
                      long T) {
  RequirePositiveMu(constants, "thm5 bounds");
  const double ell = constants.smoothness;
  const double L = constants.lipschitz;
  const double Lw = constants.lipschitz_w;
  const double kappa = *constants.kappa();
  const double dn = static_cast<double>(n);
  const double dT = static_cast<double>(T);

  Thm5Result out;
  const double x = (r + 1.0) * c * ell;
  out.sgda.name = "thm5_sgda";
  out.sgda.value = (1.0 + 1.0 / x) / dn *
                   std::pow(12.0 * (r + 1.0) * c * L * Lw, 1.0 / (x + 1.0)) *
                   std::pow(dT, x / (x + 1.0));
  out.sgda.conditions.push_back(Cond("c > 0", c > 0.0));
  out.sgda.conditions.push_back(
      Cond("1 <= r <= kappa", r >= 1.0 && r <= kappa));

  const double y = (kappa + 2.0) * ell * c;
  out.sgdmax.name = "thm5_sgdmax";
  out.sgdmax.value = (1.0 + 2.0 / y) / dn *
                     std::pow(2.0 * c * Lw * Lw, 2.0 / (y + 2.0)) *
                     std::pow(dT, y / (y + 2.0));
  out.sgdmax.conditions.push_back(Cond("c > 0", c > 0.0));
  return out;
}

BoundReport Thm6Bound(double c, const Constants& constants, long n, long T) {
  const double ell = constants.smoothness;
  const double x = ell * c;
  BoundReport r;
  r.name = "thm6";
  r.value = (1.0 + 1.0 / x) / static_cast<double>(n) *
            std::pow(2.0 * c * constants.lipschitz * constants.lipschitz_w,
                     1.0 / (x + 1.0)) *
            std::pow(static_cast<double>(T), x / (x + 1.0));
  r.conditions.push_back(Cond("c > 0", c > 0.0));
  return r;
}

double Lemma6Smoothness(const Constants& constants) {
  RequirePositiveMu(constants, "lemma6 smoothness");
  const double ell = constants.smoothness;
  return ell + ell * ell / (2.0 * constants.mu);
}

}  // namespace mmlab
