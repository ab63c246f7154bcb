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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>

#include <nlohmann/json.hpp>

#include "celldet/bench.h"
#include "celldet/density.h"
#include "celldet/errors.h"
#include "celldet/extraction.h"
#include "celldet/geometry.h"
#include "celldet/io.h"
#include "celldet/metrics.h"
#include "celldet/parallel.h"
#include "celldet/report.h"
#include "celldet/synth.h"
#include "plot.h"

namespace celldet::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path OutputPath(const fs::path& input, const std::string& out_dir,
                    const char* extension) {
  fs::path name = input.filename();
  name.replace_extension(extension);
  return (out_dir.empty() ? input.parent_path() : fs::path(out_dir)) / name;
}

std::vector<fs::path> ListFiles(const fs::path& dir, const char* extension) {
  if (!fs::is_directory(dir)) {
    throw InputError(dir.string() + ": not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

json ReadJson(const fs::path& path) {
  const std::string text = ReadFileBytes(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string(), -1, static_cast<std::int64_t>(e.byte > 0 ? e.byte - 1 : 0),
                      "invalid JSON");
  }
}

void WriteJson(const fs::path& path, const json& doc) {
  WriteFileBytes(path, doc.dump(2) + "\n");
}

// Runs fn on every index, collects each failure, then throws one Error
// listing them all in index order.
template <typename Fn>
void ForEachFile(std::size_t n, int jobs, const Fn& fn) {
  std::vector<std::string> failures(n);
  ParallelFor(n, jobs, [&](std::size_t i) {
    try {
      fn(i);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  std::string message;
  for (const std::string& f : failures) {
    if (f.empty()) continue;
    if (!message.empty()) message += "\n";
    message += f;
  }
  if (!message.empty()) throw Error(message);
}

// Names the CSV row (header is line 1) of each centroid outside the image.
void CheckInside(const CentroidSet& points, ImageGeometry geometry,
                 const std::string& source) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point2D p = points[i];
    const int x = RoundToPixel(p.x), y = RoundToPixel(p.y);
    if (x < 0 || x >= geometry.width || y < 0 || y >= geometry.height) {
      throw FormatError(source, static_cast<std::int64_t>(i) + 2, -1,
                        "centroid (" + FormatNumber(p.x) + ", " +
                            FormatNumber(p.y) + ") outside " +
                            std::to_string(geometry.width) + "x" +
                            std::to_string(geometry.height) + " image");
    }
  }
}

// Routes the human summary: stdout normally, stderr when the JSON document
// itself goes to stdout, nowhere under --quiet.
void Report(const GlobalOptions& g, bool json_on_stdout, std::ostream& out,
            std::ostream& err, const std::string& text) {
  if (g.quiet) return;
  (json_on_stdout ? err : out) << text << "\n";
}

void Emit(const std::string& path, const json& doc, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    WriteJson(path, doc);
  }
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

void CmdGenGt(const GlobalOptions& g, const GenGtOptions& o,
             std::ostream& out, std::ostream& err) {
  if (!o.fcrn && !o.ifcrn) throw ParameterError("choose --fcrn or --ifcrn");
  if (o.fcrn && !o.radius) {
    throw ParameterError("--fcrn needs --radius (no default dilation radius)");
  }
  const ImageGeometry geometry{o.width, o.height};
  ForEachFile(o.inputs.size(), g.jobs, [&](std::size_t i) {
    const fs::path input = o.inputs[i];
    const CentroidSet points = ReadCentroidCsv(input);
    CheckInside(points, geometry, input.string());
    const DensityMap map =
        o.fcrn ? RenderFcrnGt(points, geometry, FcrnGtParams{*o.radius, o.sigma})
               : RenderIfcrnGt(points, geometry, IfcrnGtParams{o.sigma, o.factor});
    WritePfm(OutputPath(input, o.out_dir, ".pfm"), map);
  });
  Report(g, false, out, err,
         "gengt: wrote " + std::to_string(o.inputs.size()) + " " +
             (o.fcrn ? "FCRN" : "IFCRN") + " map(s)");
}

void CmdExtract(const GlobalOptions& g, const ExtractOptions& o,
             std::ostream& out, std::ostream& err) {
  const int modes = int{o.fcrn} + int{o.ifcrn} + int{o.mask};
  if (modes != 1) throw ParameterError("choose one of --fcrn, --ifcrn, --mask");
  const ThresholdExtractParams tp{o.threshold,
                                  static_cast<Connectivity>(o.connectivity),
                                  o.min_area};
  const MaximaExtractParams mp{o.height, o.scale};
  if (o.fcrn) Validate(tp);
  if (o.ifcrn) Validate(mp);
  std::vector<std::size_t> counts(o.inputs.size());
  ForEachFile(o.inputs.size(), g.jobs, [&](std::size_t i) {
    const fs::path input = o.inputs[i];
    CentroidSet points;
    if (o.mask) {
      points = MaskToCentroids(ReadPgm(input));
    } else if (o.fcrn) {
      points = ExtractThresholdCc(ReadPfm(input), tp);
    } else {
      points = ExtractLocalMaxima(ReadPfm(input), mp);
    }
    WriteCentroidCsv(OutputPath(input, o.out_dir, ".csv"), points);
    counts[i] = points.size();
  });
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  Report(g, false, out, err,
         "extract: " + std::to_string(total) + " centroid(s) from " +
             std::to_string(o.inputs.size()) + " file(s)");
}

namespace {

struct PairedFile {
  std::string name;
  std::optional<fs::path> pred;
  fs::path gt;
  ImageGeometry geometry;
};

std::vector<PairedFile> PairByStem(const EvalOptions& o, std::ostream& err) {
  if (o.pred_dir.empty() || o.gt_dir.empty()) {
    throw ParameterError("eval needs --pred and --gt directories, or --manifest");
  }
  std::map<std::string, fs::path> preds, gts;
  for (const auto& p : ListFiles(o.pred_dir, ".csv")) preds[p.stem().string()] = p;
  for (const auto& p : ListFiles(o.gt_dir, ".csv")) gts[p.stem().string()] = p;

  std::vector<std::string> no_pred, no_gt;
  for (const auto& [stem, path] : gts) {
    if (!preds.count(stem)) no_pred.push_back(path.string());
  }
  for (const auto& [stem, path] : preds) {
    if (!gts.count(stem)) no_gt.push_back(path.string());
  }
  if (!o.allow_missing && (!no_pred.empty() || !no_gt.empty())) {
    std::string message = "unpaired files (use --allow-missing to continue):";
    for (const auto& p : no_pred) message += "\n  no prediction for " + p;
    for (const auto& p : no_gt) message += "\n  no ground truth for " + p;
    throw InputError(message);
  }
  for (const auto& p : no_gt) {
    err << "celldet: warning: ignoring prediction without ground truth: " << p << "\n";
  }
  std::vector<PairedFile> out;
  for (const auto& [stem, path] : gts) {
    PairedFile f{stem, std::nullopt, path, {o.width, o.height}};
    if (auto it = preds.find(stem); it != preds.end()) f.pred = it->second;
    out.push_back(std::move(f));
  }
  return out;
}

// Manifest: [{"name": .., "pred": path|null, "gt": path,
//             "width": .., "height": ..}], paths relative to the manifest.
std::vector<PairedFile> PairFromManifest(const EvalOptions& o) {
  const fs::path manifest = o.manifest;
  const json doc = ReadJson(manifest);
  const std::string source = manifest.string();
  if (!doc.is_array()) throw FormatError(source, -1, -1, "manifest must be a JSON array");
  const fs::path base = manifest.parent_path();
  std::vector<PairedFile> out;
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    const std::string where = "entry " + std::to_string(i);
    if (!e.is_object() || !e.contains("gt") || !e["gt"].is_string()) {
      throw FormatError(source, -1, -1, where + ": needs a string 'gt'");
    }
    PairedFile f;
    f.gt = base / e["gt"].get<std::string>();
    f.name = e.value("name", f.gt.stem().string());
    f.geometry = {e.value("width", o.width), e.value("height", o.height)};
    if (e.contains("pred") && e["pred"].is_string()) {
      f.pred = base / e["pred"].get<std::string>();
      if (!fs::exists(*f.pred)) {
        missing.push_back(f.pred->string());
        f.pred.reset();
      }
    } else if (e.contains("pred") && !e["pred"].is_null()) {
      throw FormatError(source, -1, -1, where + ": 'pred' must be a string or null");
    } else {
      missing.push_back("prediction for " + f.name);
    }
    out.push_back(std::move(f));
  }
  if (!o.allow_missing && !missing.empty()) {
    std::string message = "missing predictions (use --allow-missing to continue):";
    for (const auto& m : missing) message += "\n  " + m;
    throw InputError(message);
  }
  return out;
}

std::vector<Polygon> CollectPolygons(const fs::path& source) {
  std::vector<Polygon> all;
  const std::vector<fs::path> files =
      fs::is_directory(source) ? ListFiles(source, ".json") : std::vector{source};
  for (const auto& f : files) {
    auto polys = ReadPolygonsJson(f);
    all.insert(all.end(), polys.begin(), polys.end());
  }
  return all;
}

}  // namespace

void CmdEval(const GlobalOptions& g, const EvalOptions& o,
             std::ostream& out, std::ostream& err) {
  if (o.alphas.empty()) throw ParameterError("alpha list must not be empty");
  const bool needs_diameter = !o.slack || !o.threshold || !o.margin;
  double diameter = 0.0;
  if (o.diameter) {
    diameter = *o.diameter;
  } else if (!o.polygons.empty()) {
    diameter = EstimateAvgDiameter(CollectPolygons(o.polygons));
  } else if (needs_diameter) {
    throw ParameterError(
        "give --diameter or --polygons (or all of --slack, --threshold, --margin)");
  }
  if (needs_diameter && !(std::isfinite(diameter) && diameter > 0.0)) {
    throw ParameterError("average diameter must be positive");
  }
  MetricParams params;
  params.slack = o.slack.value_or(0.25 * diameter);
  params.threshold = o.threshold.value_or(diameter);
  params.edge_margin = o.margin.value_or(diameter);
  params.alpha = o.alphas.front();
  Validate(params);

  const std::vector<PairedFile> files =
      o.manifest.empty() ? PairByStem(o, err) : PairFromManifest(o);
  std::vector<ImageCase> cases(files.size());
  ForEachFile(files.size(), g.jobs, [&](std::size_t i) {
    const PairedFile& f = files[i];
    ImageCase& c = cases[i];
    c.name = f.name;
    c.geometry = f.geometry;
    c.gts = ReadCentroidCsv(f.gt);
    if (f.pred) c.preds = ReadCentroidCsv(*f.pred);
  });
  const DatasetEvaluation eval = EvaluateDataset(cases, params, o.alphas, g.jobs);
  Emit(o.out, ToJson(eval, o.per_image), out);
  if (!o.csv.empty()) {
    WriteFileBytes(o.csv, CsvSummaryHeader(o.alphas) + CsvSummaryRow(o.name, eval));
  }

  const EvalReport& r = eval.primary();
  std::string text = "eval: " + std::to_string(files.size()) + " image(s), N=" +
                     std::to_string(r.total_gt) + " TP=" + std::to_string(r.tp) +
                     " FP=" + std::to_string(r.fp) + " FN=" + std::to_string(r.fn) +
                     " P=" + Fmt(r.precision) + " R=" + Fmt(r.recall) +
                     " F=" + Fmt(r.fscore);
  for (std::size_t a = 0; a < o.alphas.size(); ++a) {
    const auto& el = eval.per_alpha[a].localization_error;
    text += " El(alpha=" + FormatNumber(o.alphas[a]) + ")=" + (el ? Fmt(*el) : "n/a");
  }
  Report(g, o.out.empty(), out, err, text);
}

void CmdXval(const GlobalOptions& g, const XvalOptions& o,
             std::ostream& out, std::ostream& err) {
  if (o.reports.empty()) throw ParameterError("xval needs at least one fold report");
  std::vector<ReportSummary> folds;
  for (const auto& path : o.reports) {
    folds.push_back(SummaryFromJson(ReadJson(path), path));
  }
  for (std::size_t k = 1; k < folds.size(); ++k) {
    if (folds[k].alphas != folds[0].alphas) {
      throw InputError(o.reports[k] + ": alpha list differs from " + o.reports[0]);
    }
  }
  std::vector<double> weights = o.weights;
  if (weights.empty()) {
    for (const auto& f : folds) weights.push_back(static_cast<double>(f.total_gt));
  } else if (weights.size() != folds.size()) {
    throw ParameterError("--weights needs one value per fold report");
  }

  const auto aggregate = [&](auto get) {
    std::vector<double> values;
    for (const auto& f : folds) values.push_back(get(f));
    return CrossfoldAggregate(values, weights);
  };
  const FoldSummary p = aggregate([](const ReportSummary& f) { return f.precision; });
  const FoldSummary r = aggregate([](const ReportSummary& f) { return f.recall; });
  const FoldSummary f1 = aggregate([](const ReportSummary& f) { return f.fscore; });

  json doc;
  doc["format"] = "celldet-xval/1";
  doc["folds"] = folds.size();
  doc["sources"] = o.reports;
  doc["weights"] = weights;
  doc["precision"] = ToJson(p);
  doc["recall"] = ToJson(r);
  doc["fscore"] = ToJson(f1);
  std::string text = "xval: " + std::to_string(folds.size()) + " fold(s), P=" +
                     Fmt(p.weighted_mean) + "±" + Fmt(p.std_dev) +
                     " R=" + Fmt(r.weighted_mean) + "±" + Fmt(r.std_dev) +
                     " F=" + Fmt(f1.weighted_mean) + "±" + Fmt(f1.std_dev);
  json el = json::array();
  for (std::size_t a = 0; a < folds[0].alphas.size(); ++a) {
    // Folds without ground truth have no El and are left out.
    std::vector<double> values, w;
    for (std::size_t k = 0; k < folds.size(); ++k) {
      if (folds[k].localization_error[a]) {
        values.push_back(*folds[k].localization_error[a]);
        w.push_back(weights[k]);
      }
    }
    const double alpha = folds[0].alphas[a];
    if (values.empty()) {
      el.push_back({{"alpha", alpha}, {"summary", nullptr}});
      text += " El(alpha=" + FormatNumber(alpha) + ")=n/a";
      continue;
    }
    const FoldSummary s = CrossfoldAggregate(values, w);
    el.push_back({{"alpha", alpha}, {"summary", ToJson(s)}});
    text += " El(alpha=" + FormatNumber(alpha) + ")=" + Fmt(s.weighted_mean) +
            "±" + Fmt(s.std_dev);
  }
  doc["localization_error"] = std::move(el);
  Emit(o.out, doc, out);
  Report(g, o.out.empty(), out, err, text);
}

void CmdSynth(const GlobalOptions& g, const SynthOptions& o,
             std::ostream& out, std::ostream& err) {
  const ImageGeometry geometry{o.width, o.height};
  ValidateGeometry(geometry);
  const bool perturb = o.jitter || o.drop || o.spurious_rate;
  const fs::path root = o.out_dir;

  // Seeds are drawn up front so results do not depend on --jobs.
  CounterRng seeder(g.seed);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> seeds;
  for (int i = 0; i < o.count; ++i) {
    const std::uint64_t scene = seeder.NextU64();
    seeds.emplace_back(scene, seeder.NextU64());
  }
  std::vector<std::size_t> predicted(o.count);
  ForEachFile(static_cast<std::size_t>(o.count), g.jobs, [&](std::size_t i) {
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%04zu", i);
    SceneParams sp;
    sp.n = o.n;
    sp.geometry = geometry;
    sp.min_separation = o.min_separation;
    sp.edge_buffer = o.edge_buffer;
    sp.seed = seeds[i].first;
    const CentroidSet gt = GenerateScene(sp);
    WriteCentroidCsv(root / "gt" / (std::string(name) + ".csv"), gt);
    if (perturb) {
      PerturbParams pp;
      pp.jitter_sigma = o.jitter.value_or(0.0);
      pp.drop_rate = o.drop.value_or(0.0);
      pp.spurious_rate = o.spurious_rate.value_or(0.0);
      pp.seed = seeds[i].second;
      pp.geometry = geometry;
      pp.spurious_edge_buffer = o.edge_buffer;
      pp.spurious_min_distance = o.spurious_min_distance;
      const PerturbResult pr = Perturb(gt, pp);
      WriteCentroidCsv(root / "pred" / (std::string(name) + ".csv"), pr.points);
      predicted[i] = pr.points.size();
    }
    if (o.render == "fcrn") {
      WritePfm(root / "maps" / (std::string(name) + ".pfm"),
               RenderFcrnGt(gt, geometry, FcrnGtParams{o.radius, o.sigma}));
    } else if (o.render == "ifcrn") {
      WritePfm(root / "maps" / (std::string(name) + ".pfm"),
               RenderIfcrnGt(gt, geometry, IfcrnGtParams{o.sigma, o.factor}));
    }
  });
  std::string text = "synth: " + std::to_string(o.count) + " scene(s) of " +
                     std::to_string(o.n) + " point(s) in " + root.string();
  if (perturb) {
    std::size_t total = 0;
    for (std::size_t c : predicted) total += c;
    text += ", " + std::to_string(total) + " prediction(s)";
  }
  Report(g, false, out, err, text);
}

void CmdBench(const GlobalOptions& g, const BenchOptions& o,
             std::ostream& out, std::ostream& err) {
  if (o.inputs.empty() == (o.synthetic == 0)) {
    throw ParameterError("bench needs PFM inputs or --synthetic N, not both");
  }
  ExtractorConfig extractor;
  if (o.fcrn) {
    extractor = ThresholdExtractParams{
        o.threshold, static_cast<Connectivity>(o.connectivity), 1};
  } else {
    extractor = MaximaExtractParams{o.height_h, o.scale};
  }
  std::vector<DensityMap> maps;
  if (!o.inputs.empty()) {
    maps.resize(o.inputs.size());
    ForEachFile(o.inputs.size(), g.jobs,
                [&](std::size_t i) { maps[i] = ReadPfm(o.inputs[i]); });
  } else {
    const ImageGeometry geometry{o.width, o.height};
    ValidateGeometry(geometry);
    CounterRng seeder(g.seed);
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < o.synthetic; ++i) seeds.push_back(seeder.NextU64());
    maps.resize(seeds.size());
    ForEachFile(seeds.size(), g.jobs, [&](std::size_t i) {
      SceneParams sp;
      sp.n = o.per_map;
      sp.geometry = geometry;
      sp.min_separation = 24.0;
      sp.edge_buffer = 16.0;
      sp.seed = seeds[i];
      const CentroidSet points = GenerateScene(sp);
      maps[i] = o.fcrn ? RenderFcrnGt(points, geometry, FcrnGtParams{5.0, 3.0})
                       : RenderIfcrnGt(points, geometry, IfcrnGtParams{3.0, o.scale});
    });
  }
  const BenchReport report = BenchmarkExtraction(maps, extractor, o.repeats, g.jobs);
  Emit(o.out, ToJson(report), out);
  Report(g, o.out.empty(), out, err, "bench: " + Summary(report));
}

void CmdPlot(const GlobalOptions& g, const PlotOptions& o,
             std::ostream& out, std::ostream& err) {
  const fs::path manifest = o.manifest;
  const json doc = ReadJson(manifest);
  const std::string source = manifest.string();
  if (!doc.is_array() || doc.empty()) {
    throw FormatError(source, -1, -1, "manifest must be a non-empty JSON array");
  }
  const fs::path base = manifest.parent_path();
  std::vector<PlotPoint> points;
  double alpha = 0.0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    const std::string where = "entry " + std::to_string(i);
    if (!e.is_object() || !e.contains("eval") || !e.contains("bench") ||
        !e["eval"].is_string() || !e["bench"].is_string()) {
      throw FormatError(source, -1, -1, where + ": needs string 'eval' and 'bench'");
    }
    const fs::path eval_path = base / e["eval"].get<std::string>();
    const fs::path bench_path = base / e["bench"].get<std::string>();
    const ReportSummary summary = SummaryFromJson(ReadJson(eval_path), eval_path.string());
    const BenchReport bench = BenchReportFromJson(ReadJson(bench_path), bench_path.string());

    std::size_t a = 0;
    if (o.alpha) {
      a = summary.alphas.size();
      for (std::size_t k = 0; k < summary.alphas.size(); ++k) {
        if (summary.alphas[k] == *o.alpha) a = k;
      }
    }
    if (a >= summary.alphas.size() || !summary.localization_error[a]) {
      throw InputError(eval_path.string() + ": no localization error" +
                       (o.alpha ? " at alpha " + FormatNumber(*o.alpha) : ""));
    }
    alpha = summary.alphas[a];

    PlotPoint p;
    p.label = e.value("label", "");
    p.inference_rate = bench.nuclei_per_second;
    p.localization_error = *summary.localization_error[a];
    if (e.contains("size")) {
      if (!e["size"].is_number()) {
        throw FormatError(source, -1, -1, where + ": 'size' must be a number");
      }
      p.size = e["size"].get<double>();
    }
    points.push_back(std::move(p));
  }
  points = NormalizeLabels(std::move(points));
  WriteFileBytes(o.out, RenderScatterSvg(points, alpha));
  fs::path csv = o.csv;
  if (csv.empty()) csv = fs::path(o.out).replace_extension(".csv");
  WriteFileBytes(csv, PlotCsv(points));
  Report(g, false, out, err,
         "plot: " + std::to_string(points.size()) + " point(s) -> " + o.out +
             ", " + csv.string());
}

}  // namespace celldet::cli
