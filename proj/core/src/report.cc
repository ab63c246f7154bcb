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

#include "celldet/report.h"

#include <charconv>

#include "celldet/assignment.h"
#include "celldet/errors.h"
#include "celldet/parallel.h"

namespace celldet {

using nlohmann::json;

std::string FormatNumber(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

DatasetEvaluation EvaluateDataset(const std::vector<ImageCase>& cases,
                                  const MetricParams& params,
                                  const std::vector<double>& alphas,
                                  int jobs) {
  if (alphas.empty()) throw ParameterError("alpha list must not be empty");
  for (double a : alphas) {
    MetricParams p = params;
    p.alpha = a;
    Validate(p);
  }
  // per_image[a][i]
  std::vector<std::vector<ImageEval>> per_image(
      alphas.size(), std::vector<ImageEval>(cases.size()));
  ParallelFor(cases.size(), jobs, [&](std::size_t i) {
    const ImageCase& c = cases[i];
    ValidateGeometry(c.geometry);
    ValidateCentroids(c.preds);
    ValidateCentroids(c.gts);
    const Matching matching =
        SolveAssignment(ComputeDistanceMatrix(c.preds, c.gts));
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      MetricParams p = params;
      p.alpha = alphas[a];
      per_image[a][i] = EvaluateMatching(c.preds, c.gts, matching, c.geometry, p);
    }
  });
  DatasetEvaluation out;
  out.params = params;
  out.alphas = alphas;
  for (const auto& c : cases) out.image_names.push_back(c.name);
  for (const auto& evals : per_image) {
    out.per_alpha.push_back(AggregateDataset(evals));
  }
  return out;
}

json ToJson(const DatasetEvaluation& eval, bool include_per_image) {
  const EvalReport& main = eval.primary();
  json doc;
  doc["format"] = "celldet-eval/1";
  doc["params"] = {{"slack", eval.params.slack},
                   {"threshold", eval.params.threshold},
                   {"edge_margin", eval.params.edge_margin},
                   {"alphas", eval.alphas}};
  doc["images"] = eval.image_names.size();
  doc["total_gt"] = main.total_gt;
  doc["tp"] = main.tp;
  doc["fp"] = main.fp;
  doc["fn"] = main.fn;
  doc["precision"] = main.precision;
  doc["recall"] = main.recall;
  doc["fscore"] = main.fscore;
  json el = json::array();
  for (std::size_t a = 0; a < eval.alphas.size(); ++a) {
    const auto& value = eval.per_alpha[a].localization_error;
    el.push_back({{"alpha", eval.alphas[a]},
                  {"value", value ? json(*value) : json(nullptr)}});
  }
  doc["localization_error"] = std::move(el);
  if (!include_per_image) return doc;

  json images = json::array();
  for (std::size_t i = 0; i < eval.image_names.size(); ++i) {
    const ImageEval& base = main.per_image[i];
    json image = {{"name", eval.image_names[i]},
                  {"kept_gt", base.kept_gt_count},
                  {"tp", base.tp},
                  {"fp", base.fp},
                  {"fn", base.fn}};
    json sums = json::array();
    for (const auto& report : eval.per_alpha) {
      sums.push_back(report.per_image[i].error_sum);
    }
    image["error_sum"] = std::move(sums);
    json pairs = json::array();
    for (std::size_t k = 0; k < base.pair_errors.size(); ++k) {
      const PairError& pe = base.pair_errors[k];
      json errors = json::array();
      for (const auto& report : eval.per_alpha) {
        errors.push_back(report.per_image[i].pair_errors[k].error);
      }
      pairs.push_back({{"pred", pe.pred},
                       {"gt", pe.gt},
                       {"distance", pe.distance},
                       {"error", std::move(errors)}});
    }
    image["pairs"] = std::move(pairs);
    images.push_back(std::move(image));
  }
  doc["per_image"] = std::move(images);
  return doc;
}

namespace {

const json& Field(const json& doc, const char* key, const std::string& source) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw FormatError(source, -1, -1, std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

double Number(const json& doc, const char* key, const std::string& source) {
  const json& v = Field(doc, key, source);
  if (!v.is_number()) {
    throw FormatError(source, -1, -1, std::string("field '") + key +
                                          "' must be a number");
  }
  return v.get<double>();
}

std::size_t Count(const json& doc, const char* key, const std::string& source) {
  const json& v = Field(doc, key, source);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw FormatError(source, -1, -1, std::string("field '") + key +
                                          "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

ReportSummary SummaryFromJson(const json& doc, const std::string& source) {
  ReportSummary s;
  s.total_gt = Count(doc, "total_gt", source);
  s.precision = Number(doc, "precision", source);
  s.recall = Number(doc, "recall", source);
  s.fscore = Number(doc, "fscore", source);
  const json& el = Field(doc, "localization_error", source);
  if (!el.is_array()) {
    throw FormatError(source, -1, -1, "'localization_error' must be an array");
  }
  for (const json& entry : el) {
    s.alphas.push_back(Number(entry, "alpha", source));
    const json& v = Field(entry, "value", source);
    if (v.is_null()) {
      s.localization_error.push_back(std::nullopt);
    } else if (v.is_number()) {
      s.localization_error.push_back(v.get<double>());
    } else {
      throw FormatError(source, -1, -1, "localization error value must be a number or null");
    }
  }
  return s;
}

std::string CsvSummaryHeader(const std::vector<double>& alphas) {
  std::string out = "dataset,images,total_gt,tp,fp,fn,precision,recall,fscore";
  for (double a : alphas) out += ",el_alpha_" + FormatNumber(a);
  return out + "\n";
}

std::string CsvSummaryRow(const std::string& dataset,
                          const DatasetEvaluation& eval) {
  const EvalReport& r = eval.primary();
  std::string out = dataset + "," + std::to_string(eval.image_names.size()) +
                    "," + std::to_string(r.total_gt) + "," +
                    std::to_string(r.tp) + "," + std::to_string(r.fp) + "," +
                    std::to_string(r.fn) + "," + FormatNumber(r.precision) +
                    "," + FormatNumber(r.recall) + "," + FormatNumber(r.fscore);
  for (const auto& report : eval.per_alpha) {
    out += ",";
    if (report.localization_error) out += FormatNumber(*report.localization_error);
  }
  return out + "\n";
}

json ToJson(const BenchReport& report) {
  return {{"format", "celldet-bench/1"},
          {"extractor", report.extractor},
          {"maps", report.maps},
          {"total_nuclei", report.total_nuclei},
          {"wall_seconds", report.wall_seconds},
          {"median_seconds", report.median_seconds},
          {"nuclei_per_second", report.nuclei_per_second},
          {"per_repeat_seconds", report.per_repeat_seconds},
          {"repeats", report.repeats},
          {"threads", report.threads}};
}

BenchReport BenchReportFromJson(const json& doc, const std::string& source) {
  BenchReport r;
  const json& name = Field(doc, "extractor", source);
  if (name.is_string()) r.extractor = name.get<std::string>();
  r.maps = Count(doc, "maps", source);
  r.total_nuclei = Count(doc, "total_nuclei", source);
  r.wall_seconds = Number(doc, "wall_seconds", source);
  r.median_seconds = Number(doc, "median_seconds", source);
  r.nuclei_per_second = Number(doc, "nuclei_per_second", source);
  r.repeats = static_cast<int>(Count(doc, "repeats", source));
  r.threads = static_cast<int>(Count(doc, "threads", source));
  const json& per = Field(doc, "per_repeat_seconds", source);
  if (per.is_array()) {
    for (const json& v : per) {
      if (v.is_number()) r.per_repeat_seconds.push_back(v.get<double>());
    }
  }
  return r;
}

json ToJson(const FoldSummary& summary) {
  return {{"weighted_mean", summary.weighted_mean},
          {"std_dev", summary.std_dev},
          {"values", summary.values},
          {"weights", summary.weights}};
}

}  // namespace celldet
