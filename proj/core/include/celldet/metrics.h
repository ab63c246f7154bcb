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

// Localization Error and detection counts.
//
// Per matched pair at distance d the error is
//
//   max(0, min(1 + alpha, (d - s) / (t - s)))
//
// with slack s and threshold t. A pair with d > t is a miss: it counts one
// FP and one FN and contributes the ramp value above (which saturates at
// 1 + alpha, the FN cost 1 plus the FP cost alpha). An unmatched ground
// truth costs 1, an unmatched prediction costs alpha. Ground truths closer
// to the border than the edge margin are dropped together with their
// matched prediction; unmatched predictions inside the margin are dropped
// too. The dataset error is the summed error over the kept ground-truth
// count N.

#ifndef CELLDET_METRICS_H_
#define CELLDET_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "celldet/assignment.h"
#include "celldet/geometry.h"

namespace celldet {

struct MetricParams {
  double slack = 0.0;        // s
  double threshold = 1.0;    // t
  double alpha = 0.3;
  double edge_margin = 0.0;  // m

  // s = 0.25 D, t = D, m = D for average nucleus diameter D.
  static MetricParams FromDiameter(double diameter, double alpha);
};

// Throws ParameterError unless 0 <= s < t, alpha >= 0, m >= 0.
void Validate(const MetricParams& params);

double LocalizationError(double distance, const MetricParams& params);

struct EdgeFilterResult {
  std::vector<std::size_t> kept_gts;
  std::vector<std::size_t> discarded_preds;
};

// A ground truth is discarded iff EdgeDistance(gt) < margin.
EdgeFilterResult FilterNearEdge(std::span<const Point2D> preds,
                                std::span<const Point2D> gts,
                                const Matching& matching,
                                ImageGeometry geometry, double margin);

struct PairError {
  std::size_t pred = 0;
  std::size_t gt = 0;
  double distance = 0.0;
  double error = 0.0;
};

struct ImageEval {
  std::size_t kept_gt_count = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double error_sum = 0.0;
  std::vector<PairError> pair_errors;  // kept matched pairs, by pred index

  std::size_t ClassifiedPredictions() const { return tp + fp; }
};

ImageEval EvaluateImage(std::span<const Point2D> preds,
                        std::span<const Point2D> gts, ImageGeometry geometry,
                        const MetricParams& params);

// Re-scores a matching already computed for `params`' geometry; used when
// the same images are reported at several alpha values.
ImageEval EvaluateMatching(std::span<const Point2D> preds,
                           std::span<const Point2D> gts,
                           const Matching& matching, ImageGeometry geometry,
                           const MetricParams& params);

struct EvalReport {
  std::size_t total_gt = 0;  // N
  std::optional<double> localization_error;  // unset when N == 0
  double precision = 1.0;
  double recall = 1.0;
  double fscore = 1.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::vector<ImageEval> per_image;
};

// precision = TP / (TP + FP), 1 when both are 0; recall likewise with FN;
// fscore = 2PR / (P + R), 0 when P + R = 0.
EvalReport AggregateDataset(std::span<const ImageEval> evals);

struct FoldSummary {
  double weighted_mean = 0.0;
  double std_dev = 0.0;  // unweighted population std over folds
  std::vector<double> values;
  std::vector<double> weights;
};

// Throws InputError for empty or mismatched inputs or a non-positive weight.
FoldSummary CrossfoldAggregate(std::span<const double> values,
                               std::span<const double> weights);

}  // namespace celldet

#endif  // CELLDET_METRICS_H_
