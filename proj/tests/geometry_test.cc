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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "celldet/errors.h"

namespace celldet {
namespace {

Polygon Poly(std::vector<Point2D> v) { return Polygon{std::move(v)}; }

TEST(PolygonCentroid, UnitSquare) {
  const Point2D c = PolygonCentroid(Poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  EXPECT_DOUBLE_EQ(c.x, 0.5);
  EXPECT_DOUBLE_EQ(c.y, 0.5);
}

TEST(PolygonCentroid, Triangle) {
  const Point2D c = PolygonCentroid(Poly({{0, 0}, {6, 0}, {0, 3}}));
  EXPECT_DOUBLE_EQ(c.x, 2.0);
  EXPECT_DOUBLE_EQ(c.y, 1.0);
}

// Hand shoelace: area 7, first moments 9.5 each, so 19/14.
TEST(PolygonCentroid, LShapedHexagon) {
  const Point2D c = PolygonCentroid(
      Poly({{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 4}, {0, 4}}));
  EXPECT_NEAR(c.x, 19.0 / 14.0, 1e-12);
  EXPECT_NEAR(c.y, 19.0 / 14.0, 1e-12);
  EXPECT_NEAR(c.x, 1.3571428571428572, 1e-12);
}

TEST(PolygonCentroid, Degenerate) {
  EXPECT_THROW(PolygonCentroid(Poly({{0, 0}, {1, 1}})), InputError);
  EXPECT_THROW(PolygonCentroid(Poly({{0, 0}, {1, 1}, {2, 2}})), InputError);
  EXPECT_THROW(PolygonCentroid(Poly({{0, 0}, {1, 0}, {NAN, 1}})), InputError);
}

TEST(PolygonCentroid, TranslationRotationOrientation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int trial = 0; trial < 200; ++trial) {
    // Random star-shaped polygon around the origin.
    const int n = 3 + trial % 10;
    Polygon p;
    for (int k = 0; k < n; ++k) {
      const double a = 2 * std::numbers::pi * k / n;
      const double r = 1 + std::abs(u(rng)) / 10;
      p.vertices.push_back({r * std::cos(a), r * std::sin(a)});
    }
    const Point2D c = PolygonCentroid(p);
    const Point2D v{u(rng), u(rng)};
    Polygon shifted = p;
    for (auto& q : shifted.vertices) q = q + v;
    const Point2D cs = PolygonCentroid(shifted);
    EXPECT_NEAR(cs.x, c.x + v.x, 1e-9);
    EXPECT_NEAR(cs.y, c.y + v.y, 1e-9);

    Polygon rotated = p;
    std::rotate(rotated.vertices.begin(), rotated.vertices.begin() + trial % n,
                rotated.vertices.end());
    const Point2D cr = PolygonCentroid(rotated);
    EXPECT_NEAR(cr.x, c.x, 1e-9);
    EXPECT_NEAR(cr.y, c.y, 1e-9);

    Polygon flipped = p;
    std::reverse(flipped.vertices.begin(), flipped.vertices.end());
    const Point2D cf = PolygonCentroid(flipped);
    EXPECT_NEAR(cf.x, c.x, 1e-9);
    EXPECT_NEAR(cf.y, c.y, 1e-9);
  }
}

TEST(PolygonCentroid, ConvexCentroidInside) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> angles(3 + trial % 8);
    for (double& a : angles) a = u(rng);
    std::sort(angles.begin(), angles.end());
    Polygon p;
    for (double a : angles) p.vertices.push_back({3 + 7 * std::cos(a), -2 + 7 * std::sin(a)});
    if (std::abs(SignedArea(p)) < 1e-6) continue;
    const Point2D c = PolygonCentroid(p);
    // Inside a counter-clockwise convex polygon every edge has c on its left.
    const std::size_t n = p.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Point2D a = p.vertices[k], b = p.vertices[(k + 1) % n];
      const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
      EXPECT_GE(cross, -1e-9);
    }
  }
}

TEST(EstimateAvgDiameter, TwoSquares) {
  const std::vector<Polygon> squares{Poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}}),
                                     Poly({{5, 5}, {7, 5}, {7, 7}, {5, 7}})};
  EXPECT_NEAR(EstimateAvgDiameter(squares), 2.256758334191025, 1e-12);
}

TEST(EstimateAvgDiameter, Circle64Gon) {
  Polygon p;
  for (int k = 0; k < 64; ++k) {
    const double a = 2 * std::numbers::pi * k / 64;
    p.vertices.push_back({20 + 5 * std::cos(a), 20 + 5 * std::sin(a)});
  }
  const double d = EstimateAvgDiameter(std::vector{p});
  EXPECT_NEAR(d, 9.99196874012133, 1e-9);
  EXPECT_NEAR(d, 10.0, 0.1);
}

TEST(EstimateAvgDiameter, DegenerateEntrySkipped) {
  const std::vector<Polygon> batch{Poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}}),
                                   Poly({{0, 0}, {1, 1}, {2, 2}})};
  EXPECT_NEAR(EstimateAvgDiameter(batch), 2 * std::sqrt(4 / std::numbers::pi), 1e-12);
}

TEST(EstimateAvgDiameter, NoUsableAnnotations) {
  EXPECT_THROW(EstimateAvgDiameter(std::vector<Polygon>{}), InputError);
  EXPECT_THROW(EstimateAvgDiameter(std::vector{Poly({{0, 0}, {1, 1}})}), InputError);
}

TEST(DistanceMatrix, Examples) {
  const DistanceMatrix same = ComputeDistanceMatrix(CentroidSet{{0, 0}}, CentroidSet{{0, 0}});
  ASSERT_EQ(same.rows(), 1u);
  EXPECT_EQ(same(0, 0), 0.0);
  const DistanceMatrix five = ComputeDistanceMatrix(CentroidSet{{0, 0}}, CentroidSet{{3, 4}});
  EXPECT_EQ(five(0, 0), 5.0);
  const DistanceMatrix empty = ComputeDistanceMatrix(CentroidSet{}, CentroidSet{{1, 1}});
  EXPECT_EQ(empty.rows(), 0u);
  EXPECT_EQ(empty.cols(), 1u);
  EXPECT_TRUE(empty.empty());
}

TEST(DistanceMatrix, TransposeSymmetryExact) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1000, 1000);
  for (int trial = 0; trial < 50; ++trial) {
    CentroidSet a(trial % 7), b(trial % 5 + 1);
    for (auto& p : a) p = {u(rng), u(rng)};
    for (auto& p : b) p = {u(rng), u(rng)};
    EXPECT_EQ(ComputeDistanceMatrix(a, b), ComputeDistanceMatrix(b, a).Transposed());
  }
}

TEST(DistanceMatrix, RejectsNonFinite) {
  EXPECT_THROW(ComputeDistanceMatrix(CentroidSet{{NAN, 0}}, CentroidSet{}), InputError);
  EXPECT_THROW(ComputeDistanceMatrix(CentroidSet{}, CentroidSet{{0, INFINITY}}), InputError);
}

TEST(DistanceMatrix, SizeMismatch) {
  EXPECT_THROW(DistanceMatrix(2, 2, {1.0, 2.0, 3.0}), InputError);
}

TEST(Geometry, EdgeDistanceAndValidation) {
  const ImageGeometry g{100, 50};
  EXPECT_EQ(EdgeDistance({10, 20}, g), 10.0);
  EXPECT_EQ(EdgeDistance({95, 20}, g), 4.0);
  EXPECT_EQ(EdgeDistance({50, 47}, g), 2.0);
  EXPECT_THROW(ValidateGeometry({0, 10}), ParameterError);
  EXPECT_THROW(ValidateGeometry({10, -1}), ParameterError);
}

}  // namespace
}  // namespace celldet
