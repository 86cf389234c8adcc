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

#include <fmt/format.h>

#include <cmath>
#include <iterator>

#include "mmlab/error.h"

namespace mmlab {
namespace {

double Distance(const Iterate& a, const Iterate& b) {
  return std::hypot((a.w - b.w).norm(), (a.theta - b.theta).norm());
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe Summarize(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                       static_cast<double>(xs.size()));
  }
  return out;
}

int FirstDifferingRow(const Dataset& a, const Dataset& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a.samples().row(i) != b.samples().row(i)) return i;
  }
  return -1;
}

}  // namespace

Dataset MakeNeighborDataset(const Dataset& data, int index,
                            const Vector& z_new) {
  if (index < 0 || index >= data.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                fmt::format("replacement index {} outside [0, {})", index,
                            data.size()));
  }
  if (z_new.size() != data.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("replacement sample has dimension {}, expected {}",
                            z_new.size(), data.dim()));
  }
  Matrix samples = data.samples();
  samples.row(index) = z_new.transpose();
  return Dataset(std::move(samples));
}

StabilityTrace PairedRun(const AlgorithmSpec& spec, const Objective& obj,
                         const Dataset& data, const Dataset& neighbor,
                         const Vector& w0, const Vector& theta0, long T,
                         std::uint64_t seed, const RunOptions& options) {
  if (data.size() != neighbor.size() || data.dim() != neighbor.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "neighbouring datasets must have the same shape");
  }
  RunOptions shared = options;
  if (spec.mode == Mode::kStochastic && shared.indices.empty()) {
    shared.indices = SampleIndexStream(data.size(), T, seed);
  }
  const Trajectory a = Run(spec, obj, data, w0, theta0, T, seed, shared);
  const Trajectory b = Run(spec, obj, neighbor, w0, theta0, T, seed, shared);

  StabilityTrace trace;
  trace.seed = seed;
  trace.replaced_index = FirstDifferingRow(data, neighbor);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double dw = (a.w[k] - b.w[k]).norm();
    const double dt = (a.theta[k] - b.theta[k]).norm();
    trace.t.push_back(a.t[k]);
    trace.delta_w.push_back(dw);
    trace.delta_theta.push_back(dt);
    trace.delta.push_back(std::hypot(dw, dt));
  }
  return trace;
}

GenRiskCurve GenRiskCurveFromRun(const Trajectory& traj, const Objective& obj,
                                 const Dataset& data,
                                 const Vector& population_mean,
                                 const AlgorithmSpec& spec) {
  GenRiskCurve curve;
  curve.seed = traj.seed;
  curve.spec = spec;
  curve.t = traj.t;
  curve.gen_risk.reserve(traj.size());
  for (const Vector& w : traj.w) {
    curve.gen_risk.push_back(
        GeneralizationRiskClosedForm(obj, w, data, population_mean));
  }
  return curve;
}

GenRiskCurve MakeGenRiskCurve(const AlgorithmSpec& spec, const Objective& obj,
                              const Dataset& data,
                              const Vector& population_mean, const Vector& w0,
                              const Vector& theta0, long T, std::uint64_t seed,
                              long stride) {
  if (obj.kind() == ObjectiveKind::kToyNcSc) {
    throw Error(ErrorCode::kNoClosedForm,
                "no closed-form generalization risk for toy-ncsc");
  }
  RunOptions options;
  options.stride = stride;
  return GenRiskCurveFromRun(Run(spec, obj, data, w0, theta0, T, seed, options),
                             obj, data, population_mean, spec);
}

double EstimateExpansivity(const UpdateMap& map, const IterateSampler& sampler,
                           long num_pairs, std::uint64_t seed,
                           const UpdateMap& project) {
  if (num_pairs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "num_pairs must be >= 1");
  }
  constexpr double kMinSeparation = 1e-8;
  constexpr double kLocalScale = 1e-3;
  constexpr int kMaxRedraws = 100;
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double best = 0.0;
  for (long k = 0; k < num_pairs; ++k) {
    Iterate u, v;
    double sep = 0.0;
    for (int attempt = 0; attempt < kMaxRedraws && sep < kMinSeparation;
         ++attempt) {
      u = sampler(rng);
      if (k % 2 == 0) {
        v = sampler(rng);
      } else {
        const double scale =
            kLocalScale * std::max(1.0, std::hypot(u.w.norm(), u.theta.norm()));
        v = u;
        for (Eigen::Index j = 0; j < v.w.size(); ++j) {
          v.w[j] += scale * normal(rng);
        }
        for (Eigen::Index j = 0; j < v.theta.size(); ++j) {
          v.theta[j] += scale * normal(rng);
        }
        if (project) v = project(v);
      }
      sep = Distance(u, v);
    }
    if (sep < kMinSeparation) continue;
    best = std::max(best, Distance(map(u), map(v)) / sep);
  }
  return best;
}

std::vector<Probe> MakeProbes(const Objective& obj, int count,
                              std::uint64_t seed) {
  Rng rng(seed);
  const Sampler z_sampler = GaussianSampler(obj.dim());
  const Sampler theta_sampler = UniformBallSampler(obj.dim(), obj.rho_theta());
  std::vector<Probe> probes;
  probes.reserve(static_cast<std::size_t>(std::max(0, count)));
  for (int k = 0; k < count; ++k) {
    Probe p;
    p.z = z_sampler(rng);
    p.theta = theta_sampler(rng);
    probes.push_back(std::move(p));
  }
  return probes;
}

UniformStabilityEstimate EstimateUniformStability(
    const AlgorithmSpec& spec, const Objective& obj, const Dataset& data,
    const std::vector<Probe>& probes, const Vector& w0, const Vector& theta0,
    long T, const std::vector<Replacement>& replacements,
    const std::vector<std::uint64_t>& seeds) {
  if (probes.empty() || replacements.empty() || seeds.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "uniform stability needs probes, replacements and seeds");
  }
  RunOptions options;
  options.stride = std::max(1L, T);
  UniformStabilityEstimate out;
  std::vector<double> delta_w_final;
  for (const Replacement& r : replacements) {
    const Dataset neighbor = MakeNeighborDataset(data, r.index, r.z_new);
    // diffs[p][s]: f(w_T, theta_p; z_p) - f(w'_T, theta_p; z_p) for seed s.
    std::vector<std::vector<double>> diffs(probes.size());
    for (std::uint64_t seed : seeds) {
      RunOptions shared = options;
      if (spec.mode == Mode::kStochastic) {
        shared.indices = SampleIndexStream(data.size(), T, seed);
      }
      const Trajectory a = Run(spec, obj, data, w0, theta0, T, seed, shared);
      const Trajectory b =
          Run(spec, obj, neighbor, w0, theta0, T, seed, shared);
      const Vector& wa = a.w.back();
      const Vector& wb = b.w.back();
      delta_w_final.push_back((wa - wb).norm());
      for (std::size_t p = 0; p < probes.size(); ++p) {
        diffs[p].push_back(obj.Value(wa, probes[p].theta, probes[p].z) -
                           obj.Value(wb, probes[p].theta, probes[p].z));
      }
    }
    for (const auto& d : diffs) {
      const MeanSe s = Summarize(d);
      if (std::abs(s.mean) > out.estimate) {
        out.estimate = std::abs(s.mean);
        out.estimate_se = s.se;
      }
    }
  }
  const MeanSe dw = Summarize(delta_w_final);
  const double lw = obj.constants().lipschitz_w;
  out.lipschitz_bound = lw * dw.mean;
  out.lipschitz_bound_se = lw * dw.se;
  return out;
}

void WriteStabilityTraceCsv(const StabilityTrace& trace, std::ostream& out) {
  fmt::memory_buffer buf;
  auto it = std::back_inserter(buf);
  fmt::format_to(it, "t,delta_w,delta_theta,delta\n");
  for (std::size_t k = 0; k < trace.size(); ++k) {
    fmt::format_to(it, "{},{:.17g},{:.17g},{:.17g}\n", trace.t[k],
                   trace.delta_w[k], trace.delta_theta[k], trace.delta[k]);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void WriteGenRiskCurveCsv(const GenRiskCurve& curve, std::ostream& out) {
  fmt::memory_buffer buf;
  auto it = std::back_inserter(buf);
  fmt::format_to(it, "t,gen_risk\n");
  for (std::size_t k = 0; k < curve.t.size(); ++k) {
    fmt::format_to(it, "{},{:.17g}\n", curve.t[k], curve.gen_risk[k]);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace mmlab
