// Copyright 2026 The celldet Authors
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

#include "plot.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "celldet/errors.h"
#include "celldet/report.h"

namespace celldet::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr double kMaxRadius = 28.0;
constexpr int kTicks = 5;

std::string Fixed(double v) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 3);
  return std::string(buf, ptr);
}

std::string Escape(const std::string& s) {
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

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Axis upper bound: the data max plus headroom, never zero.
double AxisMax(double v) { return v > 0.0 ? v * 1.15 : 1.0; }

}  // namespace

std::vector<PlotPoint> NormalizeLabels(std::vector<PlotPoint> points) {
  if (points.empty()) throw ParameterError("plot needs at least one point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    PlotPoint& p = points[i];
    if (!(std::isfinite(p.size) && p.size > 0.0)) {
      throw ParameterError("plot size must be positive and finite (point " +
                           std::to_string(i + 1) + ")");
    }
    if (!std::isfinite(p.inference_rate) || !std::isfinite(p.localization_error)) {
      throw ParameterError("plot coordinates must be finite (point " +
                           std::to_string(i + 1) + ")");
    }
    if (p.label.empty()) p.label = "series-" + std::to_string(i + 1);
  }
  return points;
}

std::string RenderScatterSvg(const std::vector<PlotPoint>& points, double alpha) {
  double x_max = 0.0, y_max = 0.0, size_max = 0.0;
  for (const PlotPoint& p : points) {
    x_max = std::max(x_max, p.inference_rate);
    y_max = std::max(y_max, p.localization_error);
    size_max = std::max(size_max, p.size);
  }
  x_max = AxisMax(x_max);
  y_max = AxisMax(y_max);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + plot_w * x / x_max; };
  const auto sy = [&](double y) { return kTop + plot_h * (1.0 - y / y_max); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Fixed(kWidth) +
         "\" height=\"" + Fixed(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::string x0 = Fixed(kLeft), x1 = Fixed(kLeft + plot_w);
  const std::string y0 = Fixed(kTop + plot_h), y1 = Fixed(kTop);
  svg += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x1 + "\" y2=\"" + y0 +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x0 + "\" y2=\"" + y1 +
         "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= kTicks; ++k) {
    const double xv = x_max * k / kTicks;
    const double yv = y_max * k / kTicks;
    svg += "<text class=\"tick\" x=\"" + Fixed(sx(xv)) + "\" y=\"" +
           Fixed(kTop + plot_h + 16) + "\" text-anchor=\"middle\">" +
           FormatNumber(std::round(xv * 10) / 10) + "</text>\n";
    svg += "<text class=\"tick\" x=\"" + Fixed(kLeft - 6) + "\" y=\"" +
           Fixed(sy(yv) + 4) + "\" text-anchor=\"end\">" +
           FormatNumber(std::round(yv * 1000) / 1000) + "</text>\n";
  }
  svg += "<text class=\"axis\" x=\"" + Fixed(kLeft + plot_w / 2) + "\" y=\"" +
         Fixed(kHeight - 15) + "\" text-anchor=\"middle\">inference rate (nuclei/s)</text>\n";
  svg += "<text class=\"axis\" x=\"15\" y=\"" + Fixed(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
         Fixed(kTop + plot_h / 2) + ")\">localization error (alpha=" +
         FormatNumber(alpha) + ")</text>\n";
  for (const PlotPoint& p : points) {
    const double r = kMaxRadius * std::sqrt(p.size / size_max);
    const double cx = sx(p.inference_rate), cy = sy(p.localization_error);
    svg += "<circle cx=\"" + Fixed(cx) + "\" cy=\"" + Fixed(cy) + "\" r=\"" +
           Fixed(r) + "\" fill=\"steelblue\" fill-opacity=\"0.5\" stroke=\"navy\"/>\n";
    svg += "<text class=\"label\" x=\"" + Fixed(cx + r + 4) + "\" y=\"" +
           Fixed(cy + 4) + "\">" + Escape(p.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string PlotCsv(const std::vector<PlotPoint>& points) {
  std::string out = "label,inference_rate,localization_error,size\n";
  for (const PlotPoint& p : points) {
    out += CsvField(p.label) + "," + FormatNumber(p.inference_rate) + "," +
           FormatNumber(p.localization_error) + "," + FormatNumber(p.size) + "\n";
  }
  return out;
}

}  // namespace celldet::cli
