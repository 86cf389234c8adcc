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

#ifndef MMLAB_TOOLS_CLI_SVG_H_
#define MMLAB_TOOLS_CLI_SVG_H_

#include <string>
#include <vector>

namespace mmlab::cli {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
  // Overlays do not widen the y-range; they are clipped to the plot box.
  bool overlay = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label = "iteration";
  std::string y_label;
  std::vector<PlotSeries> series;
};

// Minimal line plot. Output depends only on the input values.
std::string RenderSvg(const PlotSpec& plot);

}  // namespace mmlab::cli

#endif  // MMLAB_TOOLS_CLI_SVG_H_
