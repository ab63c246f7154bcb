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

// Option bundles filled by the argument parser and the subcommands that
// consume them. Each command throws celldet::Error on bad input.

#ifndef CELLDET_TOOLS_COMMANDS_H_
#define CELLDET_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace celldet::cli {

struct GlobalOptions {
  std::uint64_t seed = 0;
  int jobs = 1;
  bool quiet = false;
};

struct GenGtOptions {
  std::vector<std::string> inputs;
  int width = 0;
  int height = 0;
  bool fcrn = false;
  bool ifcrn = false;
  std::optional<double> radius;
  double sigma = 3.0;
  int factor = 4;
  std::string out_dir;
};

struct ExtractOptions {
  std::vector<std::string> inputs;
  bool fcrn = false;
  bool ifcrn = false;
  bool mask = false;
  double threshold = 0.58;
  int connectivity = 8;
  int min_area = 1;
  double height = 0.4;
  int scale = 4;
  std::string out_dir;
};

struct EvalOptions {
  std::string pred_dir;
  std::string gt_dir;
  std::string manifest;
  int width = 0;
  int height = 0;
  std::optional<double> diameter;
  std::string polygons;
  std::optional<double> slack;
  std::optional<double> threshold;
  std::optional<double> margin;
  std::vector<double> alphas{0.3, 1.0};
  bool allow_missing = false;
  bool per_image = false;
  std::string out;
  std::string csv;
  std::string name = "dataset";
};

struct XvalOptions {
  std::vector<std::string> reports;
  std::vector<double> weights;
  std::string out;
};

struct SynthOptions {
  std::size_t n = 20;
  int width = 512;
  int height = 512;
  double min_separation = 24.0;
  double edge_buffer = 0.0;
  int count = 1;
  std::string out_dir;
  std::string render;  // "", "fcrn" or "ifcrn"
  double radius = 5.0;
  double sigma = 3.0;
  int factor = 4;
  std::optional<double> jitter;
  std::optional<double> drop;
  std::optional<double> spurious_rate;
  double spurious_min_distance = 0.0;
};

struct BenchOptions {
  std::vector<std::string> inputs;
  int synthetic = 0;
  int width = 512;
  int height = 512;
  std::size_t per_map = 20;
  bool fcrn = false;
  bool ifcrn = false;
  double threshold = 0.58;
  int connectivity = 8;
  double height_h = 0.4;
  int scale = 4;
  int repeats = 5;
  std::string out;
};

struct PlotOptions {
  std::string manifest;
  std::optional<double> alpha;
  std::string out;
  std::string csv;
};

void CmdGenGt(const GlobalOptions& g, const GenGtOptions& o,
             std::ostream& out, std::ostream& err);
void CmdExtract(const GlobalOptions& g, const ExtractOptions& o,
             std::ostream& out, std::ostream& err);
void CmdEval(const GlobalOptions& g, const EvalOptions& o,
             std::ostream& out, std::ostream& err);
void CmdXval(const GlobalOptions& g, const XvalOptions& o,
             std::ostream& out, std::ostream& err);
void CmdSynth(const GlobalOptions& g, const SynthOptions& o,
             std::ostream& out, std::ostream& err);
void CmdBench(const GlobalOptions& g, const BenchOptions& o,
             std::ostream& out, std::ostream& err);
void CmdPlot(const GlobalOptions& g, const PlotOptions& o,
             std::ostream& out, std::ostream& err);

}  // namespace celldet::cli

#endif  // CELLDET_TOOLS_COMMANDS_H_
