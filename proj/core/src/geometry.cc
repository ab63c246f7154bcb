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

#include "celldet/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "celldet/errors.h"

namespace celldet {

bool IsFinite(Point2D p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double Distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

void ValidateCentroids(std::span<const Point2D> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!IsFinite(points[i])) {
      throw InputError("centroid " + std::to_string(i) + " is not finite");
    }
  }
}

namespace {

// Shoelace terms accumulated relative to the first vertex; the shift keeps
// cross products small for polygons far from the origin.
struct ShoelaceSums {
  double twice_area = 0.0;
  double cx_sum = 0.0;
  double cy_sum = 0.0;
};

ShoelaceSums Shoelace(const Polygon& polygon) {
  ShoelaceSums sums;
  const auto& v = polygon.vertices;
  if (v.size() < 3) return sums;
  const Point2D origin = v.front();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2D a = v[i] - origin;
    const Point2D b = v[(i + 1) % v.size()] - origin;
    const double cross = a.x * b.y - b.x * a.y;
    sums.twice_area += cross;
    sums.cx_sum += (a.x + b.x) * cross;
    sums.cy_sum += (a.y + b.y) * cross;
  }
  return sums;
}

constexpr double kDegenerateArea = 1e-12;

}  // namespace

double SignedArea(const Polygon& polygon) {
  return 0.5 * Shoelace(polygon).twice_area;
}

void ValidateGeometry(ImageGeometry geometry) {
  if (geometry.width < 1 || geometry.height < 1) {
    throw ParameterError("image geometry must be at least 1x1, got " +
                         std::to_string(geometry.width) + "x" +
                         std::to_string(geometry.height));
  }
}

double EdgeDistance(Point2D p, ImageGeometry geometry) {
  return std::min({p.x, p.y, geometry.width - 1 - p.x,
                   geometry.height - 1 - p.y});
}

DistanceMatrix::DistanceMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

DistanceMatrix::DistanceMatrix(std::size_t rows, std::size_t cols,
                               std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw InputError("distance matrix expects " + std::to_string(rows_ * cols_) +
                     " values, got " + std::to_string(values_.size()));
  }
}

DistanceMatrix DistanceMatrix::Transposed() const {
  DistanceMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Point2D PolygonCentroid(const Polygon& polygon) {
  if (polygon.vertices.size() < 3) throw InputError("degenerate polygon");
  for (const auto& v : polygon.vertices) {
    if (!IsFinite(v)) throw InputError("degenerate polygon");
  }
  const ShoelaceSums sums = Shoelace(polygon);
  if (std::abs(0.5 * sums.twice_area) < kDegenerateArea) {
    throw InputError("degenerate polygon");
  }
  const Point2D origin = polygon.vertices.front();
  return {origin.x + sums.cx_sum / (3.0 * sums.twice_area),
          origin.y + sums.cy_sum / (3.0 * sums.twice_area)};
}

double EstimateAvgDiameter(std::span<const Polygon> polygons) {
  double sum = 0.0;
  std::size_t used = 0;
  for (const auto& polygon : polygons) {
    if (polygon.vertices.size() < 3) continue;
    const double area = std::abs(SignedArea(polygon));
    if (!std::isfinite(area) || area < kDegenerateArea) continue;
    sum += 2.0 * std::sqrt(area / std::numbers::pi);
    ++used;
  }
  if (used == 0) throw InputError("no annotations");
  return sum / static_cast<double>(used);
}

DistanceMatrix ComputeDistanceMatrix(std::span<const Point2D> preds,
                                     std::span<const Point2D> gts) {
  ValidateCentroids(preds);
  ValidateCentroids(gts);
  DistanceMatrix m(preds.size(), gts.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t j = 0; j < gts.size(); ++j) {
      m(i, j) = Distance(preds[i], gts[j]);
    }
  }
  return m;
}

}  // namespace celldet
