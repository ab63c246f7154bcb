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


#include "celldet/bench.h"

#include <cmath>

#include <gtest/gtest.h>

#include "celldet/density.h"
#include "celldet/errors.h"
#include "celldet/synth.h"

namespace celldet {
namespace {

std::vector<DensityMap> Maps(std::size_t count, std::size_t n) {
  std::vector<DensityMap> maps;
  for (std::size_t i = 0; i < count; ++i) {
    SceneParams sp;
    sp.n = n;
    sp.min_separation = 24;
    sp.edge_buffer = 16;
    sp.seed = i;
    maps.push_back(RenderIfcrnGt(GenerateScene(sp), sp.geometry, {}));
  }
  return maps;
}

TEST(BenchmarkExtraction, SelfConsistent) {
  const auto maps = Maps(10, 20);
  const BenchReport r = BenchmarkExtraction(maps, MaximaExtractParams{}, 5);
  EXPECT_EQ(r.extractor, "local-maxima");
  EXPECT_EQ(r.maps, 10u);
  EXPECT_EQ(r.total_nuclei, 200u);
  EXPECT_EQ(r.repeats, 5);
  EXPECT_EQ(r.threads, 1);
  ASSERT_EQ(r.per_repeat_seconds.size(), 5u);
  double wall = 0;
  for (double t : r.per_repeat_seconds) {
    EXPECT_GT(t, 0.0);
    wall += t;
  }
  EXPECT_NEAR(r.wall_seconds, wall, 1e-9);
  EXPECT_GT(r.nuclei_per_second, 0.0);
  EXPECT_NEAR(r.nuclei_per_second * r.median_seconds, 200.0, 1e-6);
}

TEST(BenchmarkExtraction, ThreadedCountsMatch) {
  const auto maps = Maps(6, 15);
  const BenchReport one = BenchmarkExtraction(maps, MaximaExtractParams{}, 2, 1);
  const BenchReport four = BenchmarkExtraction(maps, MaximaExtractParams{}, 2, 4);
  EXPECT_EQ(one.total_nuclei, four.total_nuclei);
  EXPECT_EQ(four.threads, 4);
}

TEST(BenchmarkExtraction, ZeroMapsGiveZeroRate) {
  const std::vector<DensityMap> maps(3, DensityMap({64, 64}));
  const BenchReport r =
      BenchmarkExtraction(maps, ThresholdExtractParams{}, 3);
  EXPECT_EQ(r.extractor, "threshold-cc");
  EXPECT_EQ(r.total_nuclei, 0u);
  EXPECT_EQ(r.nuclei_per_second, 0.0);
}

TEST(BenchmarkExtraction, Errors) {
  const std::vector<DensityMap> none;
  try {
    BenchmarkExtraction(none, MaximaExtractParams{}, 1);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "nothing to benchmark");
  }
  const auto maps = Maps(1, 1);
  EXPECT_THROW(BenchmarkExtraction(maps, MaximaExtractParams{}, 0), ParameterError);
  EXPECT_THROW(BenchmarkExtraction(maps, MaximaExtractParams{}, 1, 0), ParameterError);
}

TEST(BenchmarkExtraction, SummaryLine) {
  const BenchReport r = BenchmarkExtraction(Maps(2, 5), MaximaExtractParams{}, 1);
  const std::string s = Summary(r);
  EXPECT_NE(s.find("local-maxima"), std::string::npos);
  EXPECT_NE(s.find("10 nuclei"), std::string::npos);
  EXPECT_EQ(s.find('\n'), std::string::npos);
}

TEST(RunExtractor, Dispatch) {
  const auto maps = Maps(1, 7);
  EXPECT_EQ(RunExtractor(maps[0], MaximaExtractParams{}).size(), 7u);
  EXPECT_EQ(ExtractorName(ThresholdExtractParams{}), "threshold-cc");
}

}  // namespace
}  // namespace celldet
