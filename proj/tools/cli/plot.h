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

#ifndef CELLDET_TOOLS_PLOT_H_
#define CELLDET_TOOLS_PLOT_H_

#include <string>
#include <vector>

namespace celldet::cli {

struct PlotPoint {
  std::string label;
  double inference_rate = 0.0;  // x, nuclei per second
  double localization_error = 0.0;  // y
  double size = 1.0;  // circle area is proportional to this
};

// Empty labels become "series-<1-based index>". Throws ParameterError for
// an empty list or a non-positive size.
std::vector<PlotPoint> NormalizeLabels(std::vector<PlotPoint> points);

// Static SVG scatter with one <circle> and one label <text> per point.
std::string RenderScatterSvg(const std::vector<PlotPoint>& points,
                             double alpha);

std::string PlotCsv(const std::vector<PlotPoint>& points);

}  // namespace celldet::cli

#endif  // CELLDET_TOOLS_PLOT_H_
