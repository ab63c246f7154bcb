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


#include "celldet/density.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "celldet/errors.h"

namespace celldet {
namespace {

DensityMap RandomMap(ImageGeometry g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  DensityMap m(g);
  for (float& v : m.values()) v = u(rng);
  return m;
}

double Total(const DensityMap& m) {
  return std::accumulate(m.values().begin(), m.values().end(), 0.0);
}

// Direct 2D convolution with the outer-product kernel and zero padding.
DensityMap DirectBlur(const DensityMap& m, double sigma, bool sum_one) {
  const int r = static_cast<int>(std::ceil(3 * sigma));
  std::vector<double> k1(2 * r + 1);
  double s = 0;
  for (int k = -r; k <= r; ++k) s += k1[k + r] = std::exp(-k * k / (2 * sigma * sigma));
  if (sum_one) {
    for (double& v : k1) v /= s;
  }
  DensityMap out(m.geometry());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      double acc = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int sx = x + dx, sy = y + dy;
          if (sx < 0 || sy < 0 || sx >= m.width() || sy >= m.height()) continue;
          acc += k1[dx + r] * k1[dy + r] * m.at(sx, sy);
        }
      }
      out.at(x, y) = static_cast<float>(acc);
    }
  }
  return out;
}

std::pair<int, int> ArgMax(const DensityMap& m) {
  const auto v = m.values();
  const auto it = std::max_element(v.begin(), v.end());
  const int i = static_cast<int>(it - v.begin());
  return {i % m.width(), i / m.width()};
}

TEST(GaussianBlur, ZeroMap) {
  const DensityMap zero({20, 10});
  EXPECT_EQ(GaussianBlur(zero, 2.0, KernelNormalization::kSumOne), zero);
}

TEST(GaussianBlur, PeakOneImpulse) {
  DensityMap m({21, 21});
  m.at(10, 10) = 1.0f;
  const DensityMap b = GaussianBlur(m, 2.0, KernelNormalization::kPeakOne);
  EXPECT_EQ(b.at(10, 10), 1.0f);
  EXPECT_EQ(ArgMax(b), std::make_pair(10, 10));
}

TEST(GaussianBlur, SumOneConstantInterior) {
  DensityMap m({40, 40});
  std::fill(m.values().begin(), m.values().end(), 1.0f);
  const DensityMap b = GaussianBlur(m, 2.0, KernelNormalization::kSumOne);
  for (int y = 6; y < 34; ++y) {
    for (int x = 6; x < 34; ++x) EXPECT_NEAR(b.at(x, y), 1.0, 1e-6);
  }
  // Zero padding loses mass at the border.
  EXPECT_LT(b.at(0, 0), 0.5f);
}

TEST(GaussianBlur, SeparableMatchesDirect) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const DensityMap m = RandomMap({16, 16}, seed);
    for (double sigma : {0.6, 1.0, 2.5}) {
      for (bool sum_one : {true, false}) {
        const DensityMap a = GaussianBlur(
            m, sigma, sum_one ? KernelNormalization::kSumOne : KernelNormalization::kPeakOne);
        const DensityMap d = DirectBlur(m, sigma, sum_one);
        for (std::size_t i = 0; i < a.values().size(); ++i) {
          ASSERT_NEAR(a.values()[i], d.values()[i], 1e-5);
        }
      }
    }
  }
}

TEST(GaussianBlur, Linear) {
  const DensityMap a = RandomMap({24, 17}, 1), b = RandomMap({24, 17}, 2);
  DensityMap combo(a.geometry());
  for (std::size_t i = 0; i < combo.values().size(); ++i) {
    combo.values()[i] = 0.7f * a.values()[i] + 0.2f * b.values()[i];
  }
  const auto n = KernelNormalization::kSumOne;
  const DensityMap lhs = GaussianBlur(combo, 1.5, n);
  const DensityMap ba = GaussianBlur(a, 1.5, n), bb = GaussianBlur(b, 1.5, n);
  for (std::size_t i = 0; i < lhs.values().size(); ++i) {
    EXPECT_NEAR(lhs.values()[i], 0.7 * ba.values()[i] + 0.2 * bb.values()[i], 1e-5);
  }
}

TEST(GaussianBlur, BadSigma) {
  const DensityMap m({4, 4});
  EXPECT_THROW(GaussianBlur(m, 0.0, KernelNormalization::kSumOne), ParameterError);
  EXPECT_THROW(GaussianBlur(m, -1.0, KernelNormalization::kSumOne), ParameterError);
  EXPECT_THROW(GaussianBlur(m, NAN, KernelNormalization::kSumOne), ParameterError);
}

TEST(DilateDisk, RadiusZeroIdentity) {
  DensityMap m({9, 9});
  m.at(3, 4) = 1.0f;
  m.at(8, 8) = 1.0f;
  EXPECT_EQ(DilateDisk(m, 0.0), m);
}

TEST(DilateDisk, RadiusTwoHasThirteenPixels) {
  DensityMap m({21, 21});
  m.at(10, 10) = 1.0f;
  EXPECT_EQ(Total(DilateDisk(m, 2.0)), 13.0);
}

TEST(DilateDisk, EmptyAndBad) {
  const DensityMap m({8, 8});
  EXPECT_EQ(DilateDisk(m, 3.0), m);
  EXPECT_THROW(DilateDisk(m, -1.0), ParameterError);
}

TEST(Downsample, Examples) {
  const DensityMap m = RandomMap({7, 5}, 9);
  EXPECT_EQ(Downsample(m, 1), m);

  DensityMap c({4, 4});
  std::fill(c.values().begin(), c.values().end(), 0.25f);
  const DensityMap dc = Downsample(c, 4);
  ASSERT_EQ(dc.geometry(), (ImageGeometry{1, 1}));
  EXPECT_EQ(dc.at(0, 0), 0.25f);

  DensityMap one({4, 4});
  one.at(2, 1) = 1.0f;
  EXPECT_EQ(Downsample(one, 4).at(0, 0), 1.0f / 16.0f);
  EXPECT_EQ(Downsample(RandomMap({9, 5}, 1), 4).geometry(), (ImageGeometry{3, 2}));
  EXPECT_THROW(Downsample(m, 0), ParameterError);
}

TEST(CoordinateMapping, RoundTrip) {
  for (int f : {1, 2, 4, 8}) {
    for (double x : {0.0, 3.25, 31.0, 511.0}) {
      EXPECT_NEAR(ToFullResolution(ToDownsampled(x, f), f), x, 1e-12);
    }
  }
  EXPECT_EQ(ToDownsampled(32.0, 4), 7.625);
  EXPECT_EQ(RoundToPixel(2.5), 3);
  EXPECT_EQ(RoundToPixel(-0.5), 0);
  EXPECT_EQ(RoundToPixel(-0.6), -1);
}

TEST(RenderFcrnGt, Empty) {
  const DensityMap m = RenderFcrnGt(CentroidSet{}, {32, 16}, {3.0, 1.0});
  EXPECT_EQ(m, DensityMap({32, 16}));
}

TEST(RenderFcrnGt, MassEqualsDiskArea) {
  // Disk pixel counts for radius 0, 2 and 5.
  const std::vector<std::pair<double, double>> cases{{0.0, 1.0}, {2.0, 13.0}, {5.0, 81.0}};
  for (const auto& [r, count] : cases) {
    for (double sigma : {1.0, 2.0, 3.0}) {
      const DensityMap m = RenderFcrnGt(CentroidSet{{40, 41}}, {80, 80}, {r, sigma});
      EXPECT_NEAR(Total(m), count, 1e-4) << "r=" << r << " sigma=" << sigma;
    }
  }
}

TEST(RenderFcrnGt, DisjointSuperposition) {
  const double r = 3, sigma = 2;
  const ImageGeometry g{100, 60};
  const Point2D a{20, 30}, b{20 + 2 * (r + 3 * sigma) + 1, 30};
  const DensityMap both = RenderFcrnGt(CentroidSet{a, b}, g, {r, sigma});
  const DensityMap ma = RenderFcrnGt(CentroidSet{a}, g, {r, sigma});
  const DensityMap mb = RenderFcrnGt(CentroidSet{b}, g, {r, sigma});
  for (std::size_t i = 0; i < both.values().size(); ++i) {
    EXPECT_EQ(both.values()[i], ma.values()[i] + mb.values()[i]);
  }
}

TEST(RenderIfcrnGt, PeakAtCentroid) {
  const DensityMap m1 = RenderIfcrnGt(CentroidSet{{32, 32}}, {64, 64}, {3.0, 1});
  EXPECT_EQ(m1.at(32, 32), 1.0f);
  EXPECT_EQ(ArgMax(m1), std::make_pair(32, 32));

  const DensityMap m4 = RenderIfcrnGt(CentroidSet{{32, 32}}, {64, 64}, {3.0, 4});
  EXPECT_EQ(m4.geometry(), (ImageGeometry{16, 16}));
  EXPECT_EQ(m4.at(8, 8), 1.0f);
  EXPECT_EQ(ArgMax(m4), std::make_pair(8, 8));

  EXPECT_EQ(RenderIfcrnGt(CentroidSet{}, {64, 64}, {}), DensityMap({16, 16}));
}

TEST(RenderGt, PermutationInvariantAndBounded) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 127);
  for (int trial = 0; trial < 10; ++trial) {
    CentroidSet pts(12);
    for (auto& p : pts) p = {u(rng), u(rng)};
    CentroidSet shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const ImageGeometry g{128, 128};
    const DensityMap f1 = RenderFcrnGt(pts, g, {4.0, 2.0});
    EXPECT_EQ(f1, RenderFcrnGt(shuffled, g, {4.0, 2.0}));
    const DensityMap i1 = RenderIfcrnGt(pts, g, {3.0, 4});
    EXPECT_EQ(i1, RenderIfcrnGt(shuffled, g, {3.0, 4}));
    for (const DensityMap* m : {&f1, &i1}) {
      for (float v : m->values()) {
        ASSERT_GE(v, 0.0f);
        ASSERT_LE(v, 1.0f);
      }
    }
  }
}

TEST(RenderGt, OutOfBoundsNamesIndex) {
  const CentroidSet pts{{1, 1}, {5, 5}, {40, 2}};
  try {
    RenderIfcrnGt(pts, {32, 32}, {});
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("index 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(RenderFcrnGt(CentroidSet{{-0.6, 3}}, {8, 8}, {1.0, 1.0}), InputError);
  EXPECT_NO_THROW(RenderFcrnGt(CentroidSet{{-0.5, 7.49}}, {8, 8}, {1.0, 1.0}));
}

TEST(RenderGt, BadParams) {
  EXPECT_THROW(RenderFcrnGt(CentroidSet{}, {8, 8}, {-1.0, 1.0}), ParameterError);
  EXPECT_THROW(RenderFcrnGt(CentroidSet{}, {8, 8}, {1.0, 0.0}), ParameterError);
  EXPECT_THROW(RenderIfcrnGt(CentroidSet{}, {8, 8}, {0.0, 4}), ParameterError);
  EXPECT_THROW(RenderIfcrnGt(CentroidSet{}, {8, 8}, {3.0, 0}), ParameterError);
  EXPECT_THROW(RenderIfcrnGt(CentroidSet{}, {0, 8}, {3.0, 4}), ParameterError);
}

}  // namespace
}  // namespace celldet
