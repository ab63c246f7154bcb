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

#ifndef CELLDET_BENCH_H_
#define CELLDET_BENCH_H_

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "celldet/density.h"
#include "celldet/extraction.h"

namespace celldet {

using ExtractorConfig = std::variant<ThresholdExtractParams, MaximaExtractParams>;

std::string ExtractorName(const ExtractorConfig& extractor);

CentroidSet RunExtractor(const DensityMap& map, const ExtractorConfig& extractor);

struct BenchReport {
  std::string extractor;
  std::size_t maps = 0;
  std::size_t total_nuclei = 0;  // detections in one pass
  double wall_seconds = 0.0;     // all timed repeats together
  double median_seconds = 0.0;
  double nuclei_per_second = 0.0;  // total_nuclei / median, 0 if no nuclei
  std::vector<double> per_repeat_seconds;
  int repeats = 0;
  int threads = 1;
};

// Extraction throughput over in-memory maps. One untimed warm-up pass, then
// `repeats` timed passes; the rate uses the median pass time. With
// threads > 1 maps are split across worker threads inside each pass.
// Throws InputError("nothing to benchmark") for an empty map list and
// ParameterError for repeats < 1 or threads < 1.
BenchReport BenchmarkExtraction(std::span<const DensityMap> maps,
                                const ExtractorConfig& extractor, int repeats,
                                int threads = 1);

std::string Summary(const BenchReport& report);

}  // namespace celldet

#endif  // CELLDET_BENCH_H_
