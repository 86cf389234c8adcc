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

#include <benchmark/benchmark.h>

#include "mmlab/dataset.h"
#include "mmlab/objectives.h"
#include "mmlab/optimizers.h"
#include "mmlab/stability.h"

namespace mmlab {
namespace {

Objective MakeObjective(int kind, int d) {
  switch (kind) {
    case 0:
      return Objective::Bilinear(d, 100.0, 100.0);
    case 1:
      return Objective::ScScQuadratic(d, 0.1, 100.0, 100.0);
    default:
      return Objective::ToyNcSc(d, 0.5, 2.0, 2.0);
  }
}

void SetKindLabel(benchmark::State& state, int kind) {
  state.SetLabel(ObjectiveKindName(MakeObjective(kind, 1).kind()));
}

void BM_GdaStep(benchmark::State& state) {
  const int kind = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const Objective obj = MakeObjective(kind, d);
  const Vector w = Vector::Constant(d, 0.1);
  const Vector theta = Vector::Constant(d, -0.1);
  const Vector z = Vector::Constant(d, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(GdaStep(obj, w, theta, z, 0.02, 0.02));
  }
  SetKindLabel(state, kind);
}
BENCHMARK(BM_GdaStep)->ArgsProduct({{0, 1, 2}, {5, 50, 500}});

void BM_PpmStep(benchmark::State& state) {
  const int kind = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const Objective obj = MakeObjective(kind, d);
  const Vector w = Vector::Constant(d, 0.1);
  const Vector theta = Vector::Constant(d, -0.1);
  const Vector z = Vector::Constant(d, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(PpmStep(obj, w, theta, z, 0.2));
  }
  SetKindLabel(state, kind);
}
BENCHMARK(BM_PpmStep)->ArgsProduct({{0, 1, 2}, {5, 50, 500}});

void BM_GdmaxStep(benchmark::State& state) {
  const int kind = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const Objective obj = MakeObjective(kind, d);
  const Vector w = Vector::Constant(d, 0.1);
  const Vector z = Vector::Constant(d, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(GdmaxStep(obj, w, z, 0.02));
  }
  SetKindLabel(state, kind);
}
BENCHMARK(BM_GdmaxStep)->ArgsProduct({{0, 1, 2}, {5, 50, 500}});

// Full 20k-iteration runs at the figure scale (d=50, n=1000).
void BM_FigureRun(benchmark::State& state) {
  const int kind = static_cast<int>(state.range(0));
  AlgorithmSpec spec;
  spec.family = state.range(1) == 0 ? Family::kGda : Family::kPpm;
  spec.mode = Mode::kStochastic;
  const Objective obj = MakeObjective(kind, 50);
  const Dataset data = MakeGaussianDataset(50, 1000, 1);
  const Vector zero = Vector::Zero(50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        MakeGenRiskCurve(spec, obj, data, zero, zero, zero, 20000, 1, 10));
  }
  state.SetLabel(ObjectiveKindName(obj.kind()) + "/" + spec.ShortName());
}
BENCHMARK(BM_FigureRun)
    ->ArgsProduct({{0, 1}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_PairedRun(benchmark::State& state) {
  const int d = 5;
  const int n = 50;
  const Objective obj = Objective::ToyNcSc(d, 0.25, 10.0, 10.0);
  const Dataset data = MakeGaussianDataset(d, n, 1);
  const Dataset neighbor =
      MakeNeighborDataset(data, 0, Vector::Constant(d, 1.0));
  AlgorithmSpec spec;
  spec.family = state.range(0) == 0 ? Family::kGda : Family::kGdmax;
  spec.mode = Mode::kStochastic;
  spec.step_w = Schedule::InverseT(1.0);
  spec.step_theta = Schedule::InverseT(1.0);
  const Vector w0 = Vector::Constant(d, 0.5);
  const Vector theta0 = Vector::Zero(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        PairedRun(spec, obj, data, neighbor, w0, theta0, 2000, 1));
  }
  state.SetLabel(spec.ShortName());
}
BENCHMARK(BM_PairedRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mmlab

BENCHMARK_MAIN();
