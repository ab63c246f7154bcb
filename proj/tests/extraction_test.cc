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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "celldet/density.h"
#include "celldet/errors.h"
#include "celldet/synth.h"

namespace celldet {
namespace {

DensityMap Filled(ImageGeometry g, float v) {
  DensityMap m(g);
  std::fill(m.values().begin(), m.values().end(), v);
  return m;
}

// Nearest source within tol on each axis, used at most once.
void ExpectOneToOne(const CentroidSet& found, const CentroidSet& sources,
                    double tol) {
  ASSERT_EQ(found.size(), sources.size());
  std::set<std::size_t> used;
  for (const Point2D& f : found) {
    bool hit = false;
    for (std::size_t i = 0; i < sources.size() && !hit; ++i) {
      if (!used.count(i) && std::abs(f.x - sources[i].x) <= tol &&
          std::abs(f.y - sources[i].y) <= tol) {
        used.insert(i);
        hit = true;
      }
    }
    EXPECT_TRUE(hit) << "(" << f.x << ", " << f.y << ") has no source within " << tol;
  }
}

TEST(ExtractThresholdCc, UniformBelowThreshold) {
  EXPECT_TRUE(ExtractThresholdCc(Filled({20, 20}, 0.2f), {}).empty());
}

TEST(ExtractThresholdCc, SymmetricBlock) {
  DensityMap m({20, 20});
  for (int y = 9; y <= 11; ++y) {
    for (int x = 9; x <= 11; ++x) m.at(x, y) = 0.9f;
  }
  const CentroidSet c = ExtractThresholdCc(m, {});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], (Point2D{10, 10}));
}

TEST(ExtractThresholdCc, ThresholdInclusive) {
  DensityMap m({5, 5});
  m.at(2, 2) = 0.58f;
  EXPECT_EQ(ExtractThresholdCc(m, {0.58f, Connectivity::kEight, 1}).size(), 1u);
}

TEST(ExtractThresholdCc, ConnectivityAndArea) {
  DensityMap m({6, 6});
  m.at(1, 1) = 1.0f;
  m.at(2, 2) = 1.0f;  // diagonal neighbor
  m.at(5, 5) = 1.0f;
  EXPECT_EQ(ExtractThresholdCc(m, {0.5, Connectivity::kEight, 1}).size(), 2u);
  EXPECT_EQ(ExtractThresholdCc(m, {0.5, Connectivity::kFour, 1}).size(), 3u);
  const CentroidSet big = ExtractThresholdCc(m, {0.5, Connectivity::kEight, 2});
  ASSERT_EQ(big.size(), 1u);
  EXPECT_EQ(big[0], (Point2D{1.5, 1.5}));
}

TEST(ExtractThresholdCc, RasterOrderOfFirstPixel) {
  DensityMap m({10, 10});
  m.at(8, 1) = 1.0f;  // first in raster order
  m.at(1, 3) = 1.0f;
  m.at(1, 4) = 1.0f;
  m.at(0, 2) = 0.0f;
  const CentroidSet c = ExtractThresholdCc(m, {});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (Point2D{8, 1}));
  EXPECT_EQ(c[1], (Point2D{1, 3.5}));
}

TEST(ExtractThresholdCc, FcrnRoundTrip) {
  const CentroidSet src{{20.3, 20}, {60, 21.6}, {100, 100}, {30.5, 90.2}, {95, 40}};
  const DensityMap m = RenderFcrnGt(src, {128, 128}, {5.0, 3.0});
  ExpectOneToOne(ExtractThresholdCc(m, {}), src, 0.5);
  for (const Point2D& p : ExtractThresholdCc(m, {})) {
    double best = 1e9;
    for (const Point2D& s : src) best = std::min(best, Distance(p, s));
    EXPECT_LE(best, 1.0);
  }
}

TEST(ExtractThresholdCc, MonotoneOnUnimodalMaps) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(20, 108);
  for (int trial = 0; trial < 20; ++trial) {
    CentroidSet src{{u(rng), u(rng)}};
    const DensityMap m = RenderFcrnGt(src, {128, 128}, {4.0, 2.0});
    std::size_t prev = SIZE_MAX;
    for (double t = 0.05; t < 1.0; t += 0.05) {
      const std::size_t n = ExtractThresholdCc(m, {t, Connectivity::kEight, 1}).size();
      EXPECT_LE(n, prev);
      prev = n;
    }
  }
}

// Raising T can split one component into two, so the count is not monotone
// on arbitrary maps.
TEST(ExtractThresholdCc, SplittingCounterexample) {
  DensityMap m({3, 1});
  m.at(0, 0) = 0.9f;
  m.at(1, 0) = 0.6f;
  m.at(2, 0) = 0.9f;
  EXPECT_EQ(ExtractThresholdCc(m, {0.5, Connectivity::kEight, 1}).size(), 1u);
  EXPECT_EQ(ExtractThresholdCc(m, {0.7, Connectivity::kEight, 1}).size(), 2u);
}

TEST(ExtractThresholdCc, Validation) {
  const DensityMap m({4, 4});
  EXPECT_THROW(ExtractThresholdCc(m, {0.0, Connectivity::kEight, 1}), ParameterError);
  EXPECT_THROW(ExtractThresholdCc(m, {1.0, Connectivity::kEight, 1}), ParameterError);
  EXPECT_THROW(ExtractThresholdCc(m, {0.5, Connectivity::kEight, 0}), ParameterError);
  EXPECT_THROW(ExtractThresholdCc(m, {0.5, static_cast<Connectivity>(6), 1}),
               ParameterError);
}

TEST(ExtractLocalMaxima, AllZero) {
  EXPECT_TRUE(ExtractLocalMaxima(DensityMap({16, 16}), {0.4, 1}).empty());
}

TEST(ExtractLocalMaxima, SinglePeak) {
  const DensityMap m = RenderIfcrnGt(CentroidSet{{32, 32}}, {64, 64}, {3.0, 1});
  const CentroidSet c = ExtractLocalMaxima(m, {0.4, 1});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], (Point2D{32, 32}));
}

TEST(ExtractLocalMaxima, TwoPeaksThirtyApart) {
  const CentroidSet src{{17, 32}, {47, 32}};
  const DensityMap m = RenderIfcrnGt(src, {64, 64}, {3.0, 1});
  ExpectOneToOne(ExtractLocalMaxima(m, {0.4, 1}), src, 0.5);
}

TEST(ExtractLocalMaxima, PlateauCollapses) {
  DensityMap m({8, 8});
  m.at(2, 3) = 0.8f;
  m.at(3, 3) = 0.8f;
  m.at(4, 4) = 0.8f;
  const CentroidSet c = ExtractLocalMaxima(m, {0.4, 1});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_DOUBLE_EQ(c[0].x, 3.0);
  EXPECT_DOUBLE_EQ(c[0].y, 10.0 / 3.0);
}

TEST(ExtractLocalMaxima, ScaleMapsBack) {
  DensityMap m({16, 16});
  m.at(8, 3) = 1.0f;
  const CentroidSet c = ExtractLocalMaxima(m, {0.4, 4});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], (Point2D{33.5, 13.5}));
}

TEST(ExtractLocalMaxima, HeightMonotone) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> q(0, 10);
  for (int trial = 0; trial < 30; ++trial) {
    // Coarse quantization produces many plateaus.
    DensityMap m({24, 24});
    for (float& v : m.values()) v = q(rng) / 10.0f;
    std::size_t prev = SIZE_MAX;
    for (double h = 0.05; h <= 1.0; h += 0.05) {
      const std::size_t n = ExtractLocalMaxima(m, {h, 1}).size();
      EXPECT_LE(n, prev);
      prev = n;
    }
  }
}

TEST(ExtractLocalMaxima, IfcrnRoundTripProperty) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SceneParams sp;
    sp.n = 1 + seed % 50;
    sp.geometry = {512, 512};
    sp.min_separation = 24;
    sp.seed = seed;
    const CentroidSet scene = GenerateScene(sp);
    const DensityMap m = RenderIfcrnGt(scene, sp.geometry, {3.0, 4});
    ExpectOneToOne(ExtractLocalMaxima(m, {0.4, 4}), scene, 0.5 * 4);
  }
}

TEST(ExtractLocalMaxima, Validation) {
  const DensityMap m({4, 4});
  EXPECT_THROW(ExtractLocalMaxima(m, {0.0, 4}), ParameterError);
  EXPECT_THROW(ExtractLocalMaxima(m, {1.1, 4}), ParameterError);
  EXPECT_THROW(ExtractLocalMaxima(m, {0.4, 0}), ParameterError);
  EXPECT_NO_THROW(ExtractLocalMaxima(m, {1.0, 1}));
}

LabelMask Mask(ImageGeometry g) {
  return LabelMask{g, std::vector<std::uint16_t>(g.PixelCount(), 0)};
}

void Set(LabelMask& m, int x, int y, std::uint16_t v) {
  m.labels[static_cast<std::size_t>(y) * m.geometry.width + x] = v;
}

TEST(MaskToCentroids, Examples) {
  EXPECT_TRUE(MaskToCentroids(Mask({8, 8})).empty());

  LabelMask square = Mask({8, 8});
  for (int y = 2; y <= 4; ++y) {
    for (int x = 2; x <= 4; ++x) Set(square, x, y, 1);
  }
  EXPECT_EQ(MaskToCentroids(square), (CentroidSet{{3, 3}}));

  LabelMask two = Mask({8, 8});
  Set(two, 0, 0, 1);
  Set(two, 5, 5, 2);
  Set(two, 7, 5, 2);
  EXPECT_EQ(MaskToCentroids(two), (CentroidSet{{0, 0}, {6, 5}}));
}

TEST(MaskToCentroids, AscendingLabelsWithGaps) {
  LabelMask m = Mask({10, 2});
  Set(m, 0, 0, 900);
  Set(m, 9, 1, 3);
  Set(m, 5, 0, 65535);
  EXPECT_EQ(MaskToCentroids(m), (CentroidSet{{9, 1}, {0, 0}, {5, 0}}));
}

TEST(MaskToCentroids, CountEqualsDistinctLabels) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> lab(0, 40);
  for (int trial = 0; trial < 20; ++trial) {
    LabelMask m = Mask({30, 20});
    std::set<std::uint16_t> distinct;
    for (auto& v : m.labels) {
      v = static_cast<std::uint16_t>(lab(rng));
      if (v) distinct.insert(v);
    }
    EXPECT_EQ(MaskToCentroids(m).size(), distinct.size());
  }
}

}  // namespace
}  // namespace celldet
