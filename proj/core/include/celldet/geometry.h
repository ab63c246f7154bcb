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

// Shared geometric vocabulary: points, centroid sets, annotation polygons,
// image extents and prediction-to-ground-truth distance matrices.
//
// Coordinates are in pixels with the origin at the top-left corner, x to the
// right and y downward. Pixel centers sit on integer coordinates, so pixel
// (col, row) covers [col - 0.5, col + 0.5) x [row - 0.5, row + 0.5).

#ifndef CELLDET_GEOMETRY_H_
#define CELLDET_GEOMETRY_H_

#include <cstddef>
#include <span>
#include <vector>

namespace celldet {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
inline Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }

bool IsFinite(Point2D p);

double Distance(Point2D a, Point2D b);

// Ordered detections. Index identity matters: matchings and reports refer to
// points by their position in this list.
using CentroidSet = std::vector<Point2D>;

// Throws InputError naming the first non-finite point.
void ValidateCentroids(std::span<const Point2D> points);

// Closed polygon; the last vertex connects back to the first.
struct Polygon {
  std::vector<Point2D> vertices;
};

double SignedArea(const Polygon& polygon);

struct ImageGeometry {
  int width = 0;
  int height = 0;

  std::size_t PixelCount() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  friend bool operator==(const ImageGeometry&, const ImageGeometry&) = default;
};

// Throws ParameterError unless width >= 1 and height >= 1.
void ValidateGeometry(ImageGeometry geometry);

// Distance from a point to the nearest image border, measured between pixel
// centers: min(x, y, width - 1 - x, height - 1 - y).
double EdgeDistance(Point2D p, ImageGeometry geometry);

// Row-major Euclidean distances; rows are predictions, columns ground truths.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t rows, std::size_t cols);
  // Takes `values` in row-major order. Throws InputError if the size does not
  // match rows * cols.
  DistanceMatrix(std::size_t rows, std::size_t cols,
                 std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t row, std::size_t col) const {
    return values_[row * cols_ + col];
  }
  double& operator()(std::size_t row, std::size_t col) {
    return values_[row * cols_ + col];
  }

  std::span<const double> values() const { return values_; }
  DistanceMatrix Transposed() const;

  friend bool operator==(const DistanceMatrix&,
                         const DistanceMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Area-weighted (shoelace) centroid of the polygon interior. Throws
// InputError("degenerate polygon") for fewer than three vertices or
// |signed area| < 1e-12.
Point2D PolygonCentroid(const Polygon& polygon);

// Mean equivalent-area diameter 2 * sqrt(area / pi) over the non-degenerate
// polygons. Degenerate entries are skipped; throws InputError("no
// annotations") when nothing usable remains.
double EstimateAvgDiameter(std::span<const Polygon> polygons);

DistanceMatrix ComputeDistanceMatrix(std::span<const Point2D> preds,
                                     std::span<const Point2D> gts);

}  // namespace celldet

#endif  // CELLDET_GEOMETRY_H_
