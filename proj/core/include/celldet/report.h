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

// Dataset-level evaluation at several alpha values and the JSON / CSV
// documents exchanged between the command-line subcommands.
//
// Evaluation report JSON (format "celldet-eval/1"):
//   {
//     "format": "celldet-eval/1",
//     "params": {"slack": s, "threshold": t, "edge_margin": m,
//                "alphas": [a0, a1, ...]},
//     "images": <image count>,
//     "total_gt": N, "tp": .., "fp": .., "fn": ..,
//     "precision": P, "recall": R, "fscore": F,
//     "localization_error": [{"alpha": a0, "value": El or null}, ...],
//     "per_image": [                       // only when requested
//       {"name": .., "kept_gt": .., "tp": .., "fp": .., "fn": ..,
//        "error_sum": [per alpha],
//        "pairs": [{"pred": i, "gt": j, "distance": d,
//                   "error": [per alpha]}]}
//     ]
//   }

#ifndef CELLDET_REPORT_H_
#define CELLDET_REPORT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "celldet/bench.h"
#include "celldet/geometry.h"
#include "celldet/metrics.h"

namespace celldet {

struct ImageCase {
  std::string name;
  CentroidSet preds;
  CentroidSet gts;
  ImageGeometry geometry;
};

struct DatasetEvaluation {
  MetricParams params;  // alpha field unused; see alphas
  std::vector<double> alphas;
  std::vector<std::string> image_names;
  std::vector<EvalReport> per_alpha;  // counts identical across entries

  const EvalReport& primary() const { return per_alpha.front(); }
};

// Matches every image once, then scores it at each alpha. Images are
// processed on up to `jobs` threads; the result is independent of `jobs`.
// Throws ParameterError for an empty alpha list.
DatasetEvaluation EvaluateDataset(const std::vector<ImageCase>& cases,
                                  const MetricParams& params,
                                  const std::vector<double>& alphas,
                                  int jobs = 1);

nlohmann::json ToJson(const DatasetEvaluation& eval, bool include_per_image);

// Summary of a report document as needed for cross-fold aggregation.
struct ReportSummary {
  std::size_t total_gt = 0;
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
  std::vector<double> alphas;
  std::vector<std::optional<double>> localization_error;
};

// Throws FormatError (labelled with `source`) for missing or mistyped fields.
ReportSummary SummaryFromJson(const nlohmann::json& doc,
                              const std::string& source);

std::string CsvSummaryHeader(const std::vector<double>& alphas);
std::string CsvSummaryRow(const std::string& dataset,
                          const DatasetEvaluation& eval);

nlohmann::json ToJson(const BenchReport& report);
BenchReport BenchReportFromJson(const nlohmann::json& doc,
                                const std::string& source);

nlohmann::json ToJson(const FoldSummary& summary);

// Compact decimal for labels and CSV cells (shortest round-trip form).
std::string FormatNumber(double v);

}  // namespace celldet

#endif  // CELLDET_REPORT_H_
