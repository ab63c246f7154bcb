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

// Seeded synthetic scenes and controlled corruptions of them, for end-to-end
// checks with closed-form expected metrics.

#ifndef CELLDET_SYNTH_H_
#define CELLDET_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "celldet/geometry.h"

namespace celldet {

// Counter-based generator: the i-th draw is SplitMix64's finalizer applied to
// seed + (i + 1) * 0x9E3779B97F4A7C15. Distributions are implemented here,
// not through <random>.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t NextU64();
  // Uniform in [0, 1) with 53 random bits.
  double NextUniform();
  // Uniform in (0, 1].
  double NextUniformOpenZero();
  // Standard normal by Box-Muller (one value per two uniforms, no caching).
  double NextGaussian();
  // Poisson by multiplication for mean < 30, PTRS rejection otherwise.
  std::uint64_t NextPoisson(double mean);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

struct SceneParams {
  std::size_t n = 0;
  ImageGeometry geometry{512, 512};
  double min_separation = 0.0;
  double edge_buffer = 0.0;
  std::uint64_t seed = 0;
  // Dart-throwing budget per requested point.
  std::size_t attempts_per_point = 10000;
};

// Points uniform on [edge_buffer, extent - 1 - edge_buffer] with pairwise
// distance >= min_separation. Throws InputError when the buffered region is
// empty or the budget runs out.
CentroidSet GenerateScene(const SceneParams& params);

struct PerturbParams {
  double jitter_sigma = 0.0;
  double drop_rate = 0.0;
  double spurious_rate = 0.0;  // expected spurious points per input point
  std::uint64_t seed = 0;
  // Region and spacing for spurious points: uniform inside geometry at
  // least spurious_edge_buffer from the border and spurious_min_distance
  // from every input point.
  ImageGeometry geometry{512, 512};
  double spurious_edge_buffer = 0.0;
  double spurious_min_distance = 0.0;
};

struct PerturbResult {
  CentroidSet points;  // surviving points in input order, then spurious
  std::vector<std::size_t> dropped;
  std::size_t spurious_count = 0;
};

PerturbResult Perturb(std::span<const Point2D> gt, const PerturbParams& params);

}  // namespace celldet

#endif  // CELLDET_SYNTH_H_
