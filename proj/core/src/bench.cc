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

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <thread>

#include "celldet/errors.h"

namespace celldet {

std::string ExtractorName(const ExtractorConfig& extractor) {
  return std::holds_alternative<ThresholdExtractParams>(extractor)
             ? "threshold-cc"
             : "local-maxima";
}

CentroidSet RunExtractor(const DensityMap& map,
                         const ExtractorConfig& extractor) {
  return std::visit(
      [&](const auto& params) -> CentroidSet {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, ThresholdExtractParams>) {
          return ExtractThresholdCc(map, params);
        } else {
          return ExtractLocalMaxima(map, params);
        }
      },
      extractor);
}

namespace {

std::size_t ExtractAll(std::span<const DensityMap> maps,
                       const ExtractorConfig& extractor, int threads) {
  if (threads <= 1 || maps.size() <= 1) {
    std::size_t total = 0;
    for (const auto& map : maps) total += RunExtractor(map, extractor).size();
    return total;
  }
  const auto workers = static_cast<std::size_t>(threads);
  std::vector<std::size_t> counts(workers, 0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < maps.size(); i += workers) {
        counts[w] += RunExtractor(maps[i], extractor).size();
      }
    });
  }
  for (auto& t : pool) t.join();
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  return total;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BenchReport BenchmarkExtraction(std::span<const DensityMap> maps,
                                const ExtractorConfig& extractor, int repeats,
                                int threads) {
  if (maps.empty()) throw InputError("nothing to benchmark");
  if (repeats < 1) throw ParameterError("repeats must be >= 1");
  if (threads < 1) throw ParameterError("threads must be >= 1");
  std::visit([](const auto& p) { Validate(p); }, extractor);

  BenchReport report;
  report.extractor = ExtractorName(extractor);
  report.maps = maps.size();
  report.repeats = repeats;
  report.threads = threads;
  report.total_nuclei = ExtractAll(maps, extractor, threads);  // warm-up

  using Clock = std::chrono::steady_clock;
  for (int r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    const std::size_t count = ExtractAll(maps, extractor, threads);
    const std::chrono::duration<double> elapsed = Clock::now() - start;
    if (count != report.total_nuclei) {
      throw Error("extraction is not deterministic across passes");
    }
    report.per_repeat_seconds.push_back(elapsed.count());
    report.wall_seconds += elapsed.count();
  }
  report.median_seconds = Median(report.per_repeat_seconds);
  if (report.total_nuclei > 0 && report.median_seconds > 0.0) {
    report.nuclei_per_second =
        static_cast<double>(report.total_nuclei) / report.median_seconds;
  }
  return report;
}

std::string Summary(const BenchReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%s: %zu nuclei in %zu maps, median %.6f s over %d repeats "
                "(%d thread%s) -> %.1f nuclei/s",
                report.extractor.c_str(), report.total_nuclei, report.maps,
                report.median_seconds, report.repeats, report.threads,
                report.threads == 1 ? "" : "s", report.nuclei_per_second);
  return buf;
}

}  // namespace celldet
