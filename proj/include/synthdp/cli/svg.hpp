// Copyright 2026 The synthdp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal static SVG line chart: polylines, axes with tick labels, legend.

#ifndef SYNTHDP_CLI_SVG_HPP_
#define SYNTHDP_CLI_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace synthdp::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log2_x = false;
  std::vector<Series> series;
};

namespace internal {

inline std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace internal

inline std::string render_svg(const Chart& chart) {
  constexpr double width = 760, height = 480;
  constexpr double left = 80, right = 200, top = 50, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  auto tx = [&](double x) { return chart.log2_x ? std::log2(x) : x; };
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : chart.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      const double x = tx(s.x[i]);
      if (!std::isfinite(x) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, x), x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, s.y[i]), y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  if (x_hi == x_lo) x_hi = x_lo + 1;
  y_lo = std::min(y_lo, 0.0);
  if (y_hi <= y_lo) y_hi = y_lo + 1;
  y_hi += 0.05 * (y_hi - y_lo);
  auto px = [&](double x) { return left + (tx(x) - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"480\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"760\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"" + internal::fmt("%g", left + plot_w / 2) +
         "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">" +
         internal::escape_xml(chart.title) + "</text>\n";
  svg += "<rect x=\"80\" y=\"50\" width=\"" + internal::fmt("%g", plot_w) + "\" height=\"" +
         internal::fmt("%g", plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double u = x_lo + (x_hi - x_lo) * i / ticks;
    const double xv = chart.log2_x ? std::exp2(u) : u;
    const double xp = left + plot_w * i / ticks;
    svg += "<line x1=\"" + internal::fmt("%.2f", xp) + "\" y1=\"" +
           internal::fmt("%g", top + plot_h) + "\" x2=\"" + internal::fmt("%.2f", xp) +
           "\" y2=\"" + internal::fmt("%g", top + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + internal::fmt("%.2f", xp) + "\" y=\"" +
           internal::fmt("%g", top + plot_h + 20) + "\" text-anchor=\"middle\">" +
           internal::fmt("%.3g", xv) + "</text>\n";
    const double yv = y_lo + (y_hi - y_lo) * i / ticks;
    const double yp = py(yv);
    svg += "<line x1=\"75\" y1=\"" + internal::fmt("%.2f", yp) + "\" x2=\"80\" y2=\"" +
           internal::fmt("%.2f", yp) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"72\" y=\"" + internal::fmt("%.2f", yp + 4) +
           "\" text-anchor=\"end\">" + internal::fmt("%.3g", yv) + "</text>\n";
  }
  svg += "<text x=\"" + internal::fmt("%g", left + plot_w / 2) + "\" y=\"" +
         internal::fmt("%g", height - 15) + "\" text-anchor=\"middle\">" +
         internal::escape_xml(chart.x_label) + "</text>\n";
  svg += "<text x=\"20\" y=\"" + internal::fmt("%g", top + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         internal::fmt("%g", top + plot_h / 2) + ")\">" +
         internal::escape_xml(chart.y_label) + "</text>\n";

  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const auto& s = chart.series[k];
    const char* color = palette[k % 8];
    std::string points;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(tx(s.x[i])) || !std::isfinite(s.y[i])) continue;
      points += internal::fmt("%.2f", px(s.x[i])) + "," + internal::fmt("%.2f", py(s.y[i])) + " ";
    }
    if (!points.empty()) points.pop_back();
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.6\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") +
           " points=\"" + points + "\"/>\n";
    const double ly = top + 10 + 18.0 * static_cast<double>(k);
    const double lx = left + plot_w + 12;
    svg += "<line x1=\"" + internal::fmt("%g", lx) + "\" y1=\"" + internal::fmt("%g", ly) +
           "\" x2=\"" + internal::fmt("%g", lx + 24) + "\" y2=\"" + internal::fmt("%g", ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"1.6\"" +
           (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    svg += "<text x=\"" + internal::fmt("%g", lx + 30) + "\" y=\"" +
           internal::fmt("%g", ly + 4) + "\">" + internal::escape_xml(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace synthdp::cli

#endif  // SYNTHDP_CLI_SVG_HPP_
