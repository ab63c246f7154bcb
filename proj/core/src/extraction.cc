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

#include "celldet/extraction.h"

#include <array>
#include <cmath>
#include <map>
#include <string>

#include "celldet/errors.h"

namespace celldet {
namespace {

constexpr std::array<std::array<int, 2>, 8> kEightNeighbours = {{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};
constexpr std::array<std::array<int, 2>, 4> kFourNeighbours = {{
    {0, -1}, {-1, 0}, {1, 0}, {0, 1}}};

struct Accumulator {
  double sum_x = 0.0;
  double sum_y = 0.0;
  std::size_t count = 0;

  void Add(int x, int y) {
    sum_x += x;
    sum_y += y;
    ++count;
  }
  Point2D Mean() const {
    return {sum_x / static_cast<double>(count),
            sum_y / static_cast<double>(count)};
  }
};

// Flood-fills every component of `member` in raster order of first pixel and
// hands each one's accumulator to `emit`. `same_component(a, b)` decides
// whether two neighbouring member pixels join.
template <typename Neighbours, typename Joins, typename Emit>
void ForEachComponent(ImageGeometry g, const std::vector<char>& member,
                      const Neighbours& neighbours, const Joins& same_component,
                      const Emit& emit) {
  const std::size_t n = g.PixelCount();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (!member[start] || seen[start]) continue;
    Accumulator acc;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const int x = static_cast<int>(idx % g.width);
      const int y = static_cast<int>(idx / g.width);
      acc.Add(x, y);
      for (const auto& [dx, dy] : neighbours) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= g.width || ny >= g.height) continue;
        const std::size_t nidx = static_cast<std::size_t>(ny) * g.width + nx;
        if (!member[nidx] || seen[nidx] || !same_component(idx, nidx)) continue;
        seen[nidx] = 1;
        stack.push_back(nidx);
      }
    }
    emit(acc);
  }
}

}  // namespace

void Validate(const ThresholdExtractParams& params) {
  if (!(params.threshold > 0.0 && params.threshold < 1.0)) {
    throw ParameterError("threshold T must be in (0, 1)");
  }
  if (params.connectivity != Connectivity::kFour &&
      params.connectivity != Connectivity::kEight) {
    throw ParameterError("connectivity must be 4 or 8");
  }
  if (params.min_component_area < 1) {
    throw ParameterError("min component area must be >= 1");
  }
}

void Validate(const MaximaExtractParams& params) {
  if (!(params.height > 0.0 && params.height <= 1.0)) {
    throw ParameterError("maxima height h must be in (0, 1]");
  }
  if (params.scale_factor < 1) {
    throw ParameterError("scale factor must be >= 1");
  }
}

CentroidSet ExtractThresholdCc(const DensityMap& map,
                               const ThresholdExtractParams& params) {
  Validate(params);
  const auto values = map.values();
  std::vector<char> foreground(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    foreground[i] = values[i] >= params.threshold;
  }
  CentroidSet out;
  const auto always = [](std::size_t, std::size_t) { return true; };
  const auto emit = [&](const Accumulator& acc) {
    if (acc.count >= static_cast<std::size_t>(params.min_component_area)) {
      out.push_back(acc.Mean());
    }
  };
  if (params.connectivity == Connectivity::kFour) {
    ForEachComponent(map.geometry(), foreground, kFourNeighbours, always, emit);
  } else {
    ForEachComponent(map.geometry(), foreground, kEightNeighbours, always,
                     emit);
  }
  return out;
}

CentroidSet ExtractLocalMaxima(const DensityMap& map,
                               const MaximaExtractParams& params) {
  Validate(params);
  const ImageGeometry g = map.geometry();
  std::vector<char> candidate(g.PixelCount(), 0);
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const float v = map.at(x, y);
      if (!(v >= params.height)) continue;
      bool is_max = true;
      for (const auto& [dx, dy] : kEightNeighbours) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= g.width || ny >= g.height) continue;
        if (map.at(nx, ny) > v) {
          is_max = false;
          break;
        }
      }
      candidate[static_cast<std::size_t>(y) * g.width + x] = is_max;
    }
  }
  const auto values = map.values();
  const auto equal_value = [&](std::size_t a, std::size_t b) {
    return values[a] == values[b];
  };
  CentroidSet out;
  const int f = params.scale_factor;
  ForEachComponent(g, candidate, kEightNeighbours, equal_value,
                   [&](const Accumulator& acc) {
                     const Point2D p = acc.Mean();
                     out.push_back(
                         {ToFullResolution(p.x, f), ToFullResolution(p.y, f)});
                   });
  return out;
}

CentroidSet MaskToCentroids(const LabelMask& mask) {
  if (mask.labels.size() != mask.geometry.PixelCount()) {
    throw InputError("label mask size does not match its geometry");
  }
  std::map<std::uint16_t, Accumulator> per_label;
  for (int y = 0; y < mask.geometry.height; ++y) {
    for (int x = 0; x < mask.geometry.width; ++x) {
      const std::uint16_t label = mask.at(x, y);
      if (label != 0) per_label[label].Add(x, y);
    }
  }
  CentroidSet out;
  out.reserve(per_label.size());
  for (const auto& [label, acc] : per_label) out.push_back(acc.Mean());
  return out;
}

}  // namespace celldet
