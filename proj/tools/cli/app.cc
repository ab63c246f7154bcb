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

#include <exception>
#include <functional>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "celldet/errors.h"
#include "cli.h"
#include "commands.h"

namespace celldet::cli {
namespace {

// Reads --config files as JSON. Nested objects select subcommands, so
// {"seed": 3, "eval": {"diameter": 16}} sets --seed and `eval --diameter`.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool,
                        std::string) const override {
    return {};
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json doc;
    try {
      input >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") +
                                 e.what());
    }
    if (!doc.is_object()) {
      throw CLI::ConversionError("config must be a JSON object");
    }
    std::vector<CLI::ConfigItem> items;
    Flatten(doc, {}, items);
    return items;
  }

 private:
  static std::string Scalar(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("config value for '" + key +
                               "' must be a string, number or boolean");
  }

  static void Flatten(const nlohmann::json& obj,
                      const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (it->is_object()) {
        auto nested = parents;
        nested.push_back(it.key());
        Flatten(*it, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array()) {
        for (const auto& v : *it) item.inputs.push_back(Scalar(v, it.key()));
      } else {
        item.inputs.push_back(Scalar(*it, it.key()));
      }
      items.push_back(std::move(item));
    }
  }
};

void AddThresholdFlags(CLI::App* cmd, double* threshold, int* connectivity) {
  cmd->add_option("-T,--threshold", *threshold,
                  "binarization threshold (foreground is value >= T)")
      ->capture_default_str();
  cmd->add_option("--connectivity", *connectivity, "4 or 8")
      ->check(CLI::IsMember({4, 8}))
      ->capture_default_str();
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Centroid-based cell detection toolkit", "celldet"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file of option values");

  GlobalOptions global;
  app.add_option("--seed", global.seed, "random seed")->capture_default_str();
  app.add_option("--jobs", global.jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--quiet", global.quiet, "suppress the human summary");
  // Allow global flags after the subcommand name.
  app.fallthrough();

  std::function<void()> action;

  GenGtOptions gengt;
  {
    auto* cmd = app.add_subcommand("gengt", "render density maps from centroid CSVs");
    cmd->add_option("inputs", gengt.inputs, "centroid CSV files")->required();
    cmd->add_option("--width", gengt.width, "image width")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--height", gengt.height, "image height")->required()->check(CLI::PositiveNumber);
    auto* f = cmd->add_flag("--fcrn", gengt.fcrn, "dilated-mask target");
    auto* i = cmd->add_flag("--ifcrn", gengt.ifcrn, "downsampled peak target");
    f->excludes(i);
    cmd->add_option("--radius", gengt.radius, "disk dilation radius (FCRN)");
    cmd->add_option("--sigma", gengt.sigma, "Gaussian sigma")->capture_default_str();
    cmd->add_option("--factor", gengt.factor, "downsampling factor (IFCRN)")
        ->capture_default_str();
    cmd->add_option("--out-dir", gengt.out_dir, "output directory (default: next to input)");
    cmd->callback([&] { action = [&] { CmdGenGt(global, gengt, out, err); }; });
  }

  ExtractOptions extract;
  {
    auto* cmd = app.add_subcommand("extract", "extract centroids from maps or masks");
    cmd->add_option("inputs", extract.inputs, "PFM maps or PGM masks")->required();
    auto* f = cmd->add_flag("--fcrn", extract.fcrn, "threshold + connected components");
    auto* i = cmd->add_flag("--ifcrn", extract.ifcrn, "local maxima");
    auto* m = cmd->add_flag("--mask", extract.mask, "label mask centroids");
    f->excludes(i)->excludes(m);
    i->excludes(m);
    AddThresholdFlags(cmd, &extract.threshold, &extract.connectivity);
    cmd->add_option("--min-area", extract.min_area, "minimum component area")
        ->capture_default_str();
    cmd->add_option("-H,--height", extract.height, "minimum maxima height")
        ->capture_default_str();
    cmd->add_option("--scale", extract.scale, "map-to-image scale factor (IFCRN)")
        ->capture_default_str();
    cmd->add_option("--out-dir", extract.out_dir, "output directory (default: next to input)");
    cmd->callback([&] { action = [&] { CmdExtract(global, extract, out, err); }; });
  }

  EvalOptions eval;
  {
    auto* cmd = app.add_subcommand("eval", "score predictions against ground truth");
    cmd->add_option("--pred", eval.pred_dir, "directory of prediction CSVs");
    cmd->add_option("--gt", eval.gt_dir, "directory of ground-truth CSVs");
    cmd->add_option("--manifest", eval.manifest, "JSON list of {name, pred, gt}");
    cmd->add_option("--width", eval.width, "image width")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--height", eval.height, "image height")->required()->check(CLI::PositiveNumber);
    auto* d = cmd->add_option("--diameter", eval.diameter, "average nucleus diameter");
    auto* p = cmd->add_option("--polygons", eval.polygons,
                              "polygon JSON file or directory for the diameter");
    d->excludes(p);
    cmd->add_option("--slack", eval.slack, "slack s (default 0.25 D)");
    cmd->add_option("--threshold", eval.threshold, "threshold t (default D)");
    cmd->add_option("--margin", eval.margin, "edge margin (default D)");
    cmd->add_option("--alpha", eval.alphas, "alpha values")
        ->capture_default_str()
        ->expected(1, -1);
    cmd->add_flag("--allow-missing", eval.allow_missing,
                  "score unpaired ground truth as all missed");
    cmd->add_flag("--per-image", eval.per_image, "include per-image details");
    cmd->add_option("--out", eval.out, "report JSON path");
    cmd->add_option("--csv", eval.csv, "summary CSV path");
    cmd->add_option("--name", eval.name, "dataset name for the CSV row")
        ->capture_default_str();
    cmd->callback([&] { action = [&] { CmdEval(global, eval, out, err); }; });
  }

  XvalOptions xval;
  {
    auto* cmd = app.add_subcommand("xval", "aggregate per-fold reports");
    cmd->add_option("reports", xval.reports, "fold report JSONs")->required();
    cmd->add_option("--weights", xval.weights, "override fold weights");
    cmd->add_option("--out", xval.out, "summary JSON path");
    cmd->callback([&] { action = [&] { CmdXval(global, xval, out, err); }; });
  }

  SynthOptions synth;
  {
    auto* cmd = app.add_subcommand("synth", "generate synthetic scenes");
    cmd->add_option("--out-dir", synth.out_dir, "output directory")->required();
    cmd->add_option("-n,--points", synth.n, "points per scene")->capture_default_str();
    cmd->add_option("--width", synth.width, "image width")->capture_default_str();
    cmd->add_option("--height", synth.height, "image height")->capture_default_str();
    cmd->add_option("--min-separation", synth.min_separation, "minimum point spacing")
        ->capture_default_str();
    cmd->add_option("--edge-buffer", synth.edge_buffer, "distance from the border")
        ->capture_default_str();
    cmd->add_option("--count", synth.count, "number of scenes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--render", synth.render, "also write density maps")
        ->check(CLI::IsMember({"fcrn", "ifcrn"}));
    cmd->add_option("--radius", synth.radius, "dilation radius (FCRN)")->capture_default_str();
    cmd->add_option("--sigma", synth.sigma, "Gaussian sigma")->capture_default_str();
    cmd->add_option("--factor", synth.factor, "downsampling factor (IFCRN)")
        ->capture_default_str();
    cmd->add_option("--jitter", synth.jitter, "prediction jitter sigma");
    cmd->add_option("--drop", synth.drop, "prediction drop probability");
    cmd->add_option("--spurious", synth.spurious_rate,
                    "expected spurious predictions per point");
    cmd->add_option("--spurious-min-distance", synth.spurious_min_distance,
                    "spurious distance from every point")
        ->capture_default_str();
    cmd->callback([&] { action = [&] { CmdSynth(global, synth, out, err); }; });
  }

  BenchOptions bench;
  {
    auto* cmd = app.add_subcommand("bench", "measure extraction throughput");
    cmd->add_option("inputs", bench.inputs, "PFM maps");
    cmd->add_option("--synthetic", bench.synthetic, "generate this many maps instead")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--width", bench.width, "synthetic map width")->capture_default_str();
    cmd->add_option("--height", bench.height, "synthetic map height")->capture_default_str();
    cmd->add_option("--per-map", bench.per_map, "synthetic nuclei per map")
        ->capture_default_str();
    auto* f = cmd->add_flag("--fcrn", bench.fcrn, "threshold + connected components");
    auto* i = cmd->add_flag("--ifcrn", bench.ifcrn, "local maxima (default)");
    f->excludes(i);
    AddThresholdFlags(cmd, &bench.threshold, &bench.connectivity);
    cmd->add_option("-H,--maxima-height", bench.height_h, "minimum maxima height")
        ->capture_default_str();
    cmd->add_option("--scale", bench.scale, "map-to-image scale factor (IFCRN)")
        ->capture_default_str();
    cmd->add_option("--repeats", bench.repeats, "timed repeats")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--out", bench.out, "report JSON path");
    cmd->callback([&] { action = [&] { CmdBench(global, bench, out, err); }; });
  }

  PlotOptions plot;
  {
    auto* cmd = app.add_subcommand("plot", "error versus inference-rate scatter");
    cmd->add_option("--manifest", plot.manifest,
                    "JSON list of {label, eval, bench, size}")
        ->required();
    cmd->add_option("--alpha", plot.alpha, "alpha of the plotted error (default: first)");
    cmd->add_option("--out", plot.out, "SVG path")->required();
    cmd->add_option("--csv", plot.csv, "CSV path (default: SVG path with .csv)");
    cmd->callback([&] { action = [&] { CmdPlot(global, plot, out, err); }; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  try {
    if (action) action();
  } catch (const std::exception& e) {
    err << "celldet: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace celldet::cli
