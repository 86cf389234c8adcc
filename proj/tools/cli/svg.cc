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

#include "cli/svg.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <vector>

namespace mmlab::cli {
namespace {

constexpr double kWidth = 960;
constexpr double kHeight = 480;
constexpr double kLeft = 90;
constexpr double kRight = 220;
constexpr double kTop = 40;
constexpr double kBottom = 50;

std::string Escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void Add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Finalize(bool include_zero, double pad) {
    if (!std::isfinite(lo)) lo = hi = 0.0;
    if (include_zero) {
      lo = std::min(lo, 0.0);
      hi = std::max(hi, 0.0);
    }
    if (hi - lo <= 0.0) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double span = hi - lo;
    lo -= pad * span;
    hi += pad * span;
  }
};

// Round tick positions (1, 2 or 5 times a power of ten) covering [lo, hi].
std::vector<double> NiceTicks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double step = (f < 1.5   ? 1.0
                       : f < 3.0 ? 2.0
                       : f < 7.0 ? 5.0
                                 : 10.0) *
                      mag;
  std::vector<double> ticks;
  for (double k = std::ceil(lo / step); k * step <= hi + 1e-9 * step; ++k) {
    const double v = k * step;
    ticks.push_back(std::abs(v) < 1e-9 * step ? 0.0 : v);
  }
  return ticks;
}

}  // namespace

std::string RenderSvg(const PlotSpec& plot) {
  Range xr;
  Range data_y;
  Range overlay_y;
  for (const auto& s : plot.series) {
    for (const double x : s.x) xr.Add(x);
    for (const double y : s.y) (s.overlay ? overlay_y : data_y).Add(y);
  }
  // An overlay widens the y-range only when it stays near the data scale.
  Range yr = data_y;
  const double data_extent = std::max(std::abs(data_y.lo), std::abs(data_y.hi));
  const bool overlay_fits =
      std::isfinite(overlay_y.lo) &&
      std::max(std::abs(overlay_y.lo), std::abs(overlay_y.hi)) <=
          3.0 * data_extent;
  if (overlay_fits) {
    yr.Add(overlay_y.lo);
    yr.Add(overlay_y.hi);
  }
  xr.Finalize(false, 0.0);
  yr.Finalize(true, 0.05);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) {
    return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw;
  };
  auto sy = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  fmt::memory_buffer buf;
  auto it = std::back_inserter(buf);
  fmt::format_to(it,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" "
                 "height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
                 "font-family=\"sans-serif\" font-size=\"12\">\n",
                 kWidth, kHeight);
  fmt::format_to(it,
                 "<defs><clipPath id=\"plot\"><rect x=\"{}\" y=\"{}\" "
                 "width=\"{}\" height=\"{}\"/></clipPath></defs>\n",
                 kLeft, kTop, pw, ph);
  fmt::format_to(it, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
  fmt::format_to(it,
                 "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" "
                 "font-size=\"14\">{}</text>\n",
                 kWidth / 2, Escape(plot.title));

  // Axes, ticks and zero line.
  fmt::format_to(it,
                 "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
                 "fill=\"none\" stroke=\"black\"/>\n",
                 kLeft, kTop, pw, ph);
  for (const double xv : NiceTicks(xr.lo, xr.hi)) {
    fmt::format_to(it,
                   "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">"
                   "{:.6g}</text>\n",
                   sx(xv), kTop + ph + 18, xv);
  }
  for (const double yv : NiceTicks(yr.lo, yr.hi)) {
    fmt::format_to(it,
                   "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">"
                   "{:.6g}</text>\n",
                   kLeft - 6, sy(yv) + 4, yv);
  }
  fmt::format_to(
      it,
      "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
      "stroke=\"#999\" stroke-width=\"0.5\"/>\n",
      kLeft, sy(0.0), kLeft + pw, sy(0.0));
  fmt::format_to(it,
                 "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                 kLeft + pw / 2, kHeight - 12, Escape(plot.x_label));
  fmt::format_to(it,
                 "<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" "
                 "transform=\"rotate(-90 16 {0})\">{1}</text>\n",
                 kTop + ph / 2, Escape(plot.y_label));

  int legend_row = 0;
  for (const auto& s : plot.series) {
    const std::string dash =
        s.dashed ? " stroke-dasharray=\"6 4\"" : std::string();
    // Non-finite samples break the line into separate segments.
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        fmt::format_to(it,
                       "<polyline clip-path=\"url(#plot)\" fill=\"none\" "
                       "stroke=\"{}\" stroke-width=\"1.2\"{} points=\"{}\"/>\n",
                       s.color, dash, points);
      }
      points.clear();
    };
    const std::size_t m = std::min(s.x.size(), s.y.size());
    for (std::size_t k = 0; k < m; ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) {
        flush();
        continue;
      }
      // Keep far-off overlay points representable.
      const double py = std::clamp(sy(s.y[k]), -1e5, 1e5);
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", sx(s.x[k]), py);
    }
    flush();

    const double ly = kTop + 14 + 16 * legend_row++;
    const double lx = kLeft + pw + 12;
    fmt::format_to(it,
                   "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" "
                   "stroke=\"{3}\" stroke-width=\"2\"{4}/>\n",
                   lx, ly - 4, lx + 20, s.color, dash);
    fmt::format_to(it,
                   "<text x=\"{}\" y=\"{}\" font-size=\"11\">{}"
                   "</text>\n",
                   lx + 26, ly, Escape(s.label));
    if (s.overlay && !overlay_fits) {
      double peak = 0.0;
      for (const double y : s.y) {
        if (std::isfinite(y)) peak = std::max(peak, std::abs(y));
      }
      fmt::format_to(it,
                     "<text x=\"{}\" y=\"{}\" font-size=\"10\" "
                     "fill=\"#666\">off scale, max {:.4g}</text>\n",
                     lx + 26, kTop + 14 + 16 * legend_row++, peak);
    }
  }
  fmt::format_to(it, "</svg>\n");
  return std::string(buf.data(), buf.size());
}

}  // namespace mmlab::cli
