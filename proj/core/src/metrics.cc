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

#include "celldet/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "celldet/errors.h"

namespace celldet {

MetricParams MetricParams::FromDiameter(double diameter, double alpha) {
  if (!(diameter > 0.0) || !std::isfinite(diameter)) {
    throw ParameterError("average nucleus diameter must be > 0");
  }
  return {0.25 * diameter, diameter, alpha, diameter};
}

void Validate(const MetricParams& params) {
  if (!(params.slack >= 0.0 && params.slack < params.threshold) ||
      !std::isfinite(params.threshold)) {
    throw ParameterError("metric params need 0 <= slack < threshold");
  }
  if (!(params.alpha >= 0.0) || !std::isfinite(params.alpha)) {
    throw ParameterError("alpha must be >= 0");
  }
  if (!(params.edge_margin >= 0.0) || !std::isfinite(params.edge_margin)) {
    throw ParameterError("edge margin must be >= 0");
  }
}

double LocalizationError(double distance, const MetricParams& params) {
  const double ramp =
      (distance - params.slack) / (params.threshold - params.slack);
  return std::max(0.0, std::min(1.0 + params.alpha, ramp));
}

EdgeFilterResult FilterNearEdge(std::span<const Point2D> preds,
                                std::span<const Point2D> gts,
                                const Matching& matching,
                                ImageGeometry geometry, double margin) {
  std::vector<char> gt_kept(gts.size(), 0);
  EdgeFilterResult result;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (!(EdgeDistance(gts[g], geometry) < margin)) {
      gt_kept[g] = 1;
      result.kept_gts.push_back(g);
    }
  }
  std::vector<char> pred_discarded(preds.size(), 0);
  for (const auto& pair : matching.pairs) {
    if (!gt_kept[pair.gt]) pred_discarded[pair.pred] = 1;
  }
  for (std::size_t p : matching.unmatched_preds) {
    if (EdgeDistance(preds[p], geometry) < margin) pred_discarded[p] = 1;
  }
  for (std::size_t p = 0; p < preds.size(); ++p) {
    if (pred_discarded[p]) result.discarded_preds.push_back(p);
  }
  return result;
}

ImageEval EvaluateMatching(std::span<const Point2D> preds,
                           std::span<const Point2D> gts,
                           const Matching& matching, ImageGeometry geometry,
                           const MetricParams& params) {
  Validate(params);
  const EdgeFilterResult filter =
      FilterNearEdge(preds, gts, matching, geometry, params.edge_margin);
  std::vector<char> gt_kept(gts.size(), 0);
  for (std::size_t g : filter.kept_gts) gt_kept[g] = 1;
  std::vector<char> pred_discarded(preds.size(), 0);
  for (std::size_t p : filter.discarded_preds) pred_discarded[p] = 1;

  ImageEval eval;
  eval.kept_gt_count = filter.kept_gts.size();
  // Summed in sorted order so the total does not depend on input order.
  std::vector<double> contributions;
  for (const auto& pair : matching.pairs) {
    if (!gt_kept[pair.gt]) continue;
    const double error = LocalizationError(pair.distance, params);
    if (pair.distance <= params.threshold) {
      ++eval.tp;
    } else {
      ++eval.fp;
      ++eval.fn;
    }
    contributions.push_back(error);
    eval.pair_errors.push_back({pair.pred, pair.gt, pair.distance, error});
  }
  for (std::size_t g : matching.unmatched_gts) {
    if (!gt_kept[g]) continue;
    ++eval.fn;
    contributions.push_back(1.0);
  }
  for (std::size_t p : matching.unmatched_preds) {
    if (pred_discarded[p]) continue;
    ++eval.fp;
    contributions.push_back(params.alpha);
  }
  std::sort(contributions.begin(), contributions.end());
  for (double c : contributions) eval.error_sum += c;
  return eval;
}

ImageEval EvaluateImage(std::span<const Point2D> preds,
                        std::span<const Point2D> gts, ImageGeometry geometry,
                        const MetricParams& params) {
  Validate(params);
  ValidateGeometry(geometry);
  ValidateCentroids(preds);
  ValidateCentroids(gts);
  const Matching matching = SolveAssignment(ComputeDistanceMatrix(preds, gts));
  return EvaluateMatching(preds, gts, matching, geometry, params);
}

EvalReport AggregateDataset(std::span<const ImageEval> evals) {
  EvalReport report;
  std::vector<double> sums;
  sums.reserve(evals.size());
  for (const auto& e : evals) {
    report.total_gt += e.kept_gt_count;
    report.tp += e.tp;
    report.fp += e.fp;
    report.fn += e.fn;
    sums.push_back(e.error_sum);
  }
  // Summed in ascending order, independent of image order.
  std::sort(sums.begin(), sums.end());
  const double error_sum = std::accumulate(sums.begin(), sums.end(), 0.0);
  if (report.total_gt > 0) {
    report.localization_error =
        error_sum / static_cast<double>(report.total_gt);
  }
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 1.0
                    : static_cast<double>(num) / static_cast<double>(den);
  };
  report.precision = ratio(report.tp, report.tp + report.fp);
  report.recall = ratio(report.tp, report.tp + report.fn);
  const double pr = report.precision + report.recall;
  report.fscore = pr == 0.0 ? 0.0 : 2.0 * report.precision * report.recall / pr;
  report.per_image.assign(evals.begin(), evals.end());
  return report;
}

FoldSummary CrossfoldAggregate(std::span<const double> values,
                               std::span<const double> weights) {
  if (values.empty()) throw InputError("cross-fold aggregation needs >= 1 fold");
  if (values.size() != weights.size()) {
    throw InputError("got " + std::to_string(values.size()) + " values but " +
                     std::to_string(weights.size()) + " weights");
  }
  double weighted = 0.0;
  double weight_total = 0.0;
  double plain = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw InputError("fold weight " + std::to_string(i) + " must be > 0");
    }
    if (!std::isfinite(values[i])) {
      throw InputError("fold value " + std::to_string(i) + " is not finite");
    }
    weighted += weights[i] * values[i];
    weight_total += weights[i];
    plain += values[i] - values[0];
  }
  // Deviations from values[0]; identical folds give exactly 0.
  const double n = static_cast<double>(values.size());
  const double shift = plain / n;
  double sq = 0.0;
  for (double v : values) {
    const double d = (v - values[0]) - shift;
    sq += d * d;
  }

  FoldSummary summary;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  summary.weighted_mean = std::clamp(weighted / weight_total, *lo, *hi);
  summary.std_dev = std::sqrt(sq / n);
  summary.values.assign(values.begin(), values.end());
  summary.weights.assign(weights.begin(), weights.end());
  return summary;
}

}  // namespace celldet
