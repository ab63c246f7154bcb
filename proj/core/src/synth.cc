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

#include "celldet/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "celldet/errors.h"

namespace celldet {

std::uint64_t CounterRng::NextU64() {
  ++counter_;
  std::uint64_t z = seed_ + counter_ * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::NextUniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double CounterRng::NextUniformOpenZero() {
  return static_cast<double>((NextU64() >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::NextGaussian() {
  const double u1 = NextUniformOpenZero();
  const double u2 = NextUniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t CounterRng::NextPoisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw ParameterError("poisson mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double product = NextUniform();
    while (product > limit) {
      ++k;
      product *= NextUniform();
    }
    return k;
  }
  // Hormann's transformed rejection with squeeze (PTRS).
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = NextUniform() - 0.5;
    const double v = NextUniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

namespace {

bool FarFromAll(Point2D p, const CentroidSet& points, double min_distance) {
  if (min_distance <= 0.0) return true;
  for (const Point2D& q : points) {
    if (Distance(p, q) < min_distance) return false;
  }
  return true;
}

struct Region {
  double x0, x1, y0, y1;
};

Region BufferedRegion(ImageGeometry geometry, double buffer) {
  ValidateGeometry(geometry);
  if (!(buffer >= 0.0)) throw InputError("edge buffer must be >= 0");
  const Region r{buffer, geometry.width - 1 - buffer, buffer,
                 geometry.height - 1 - buffer};
  if (r.x1 < r.x0 || r.y1 < r.y0) {
    throw InputError("edge buffer " + std::to_string(buffer) +
                     " leaves no room in a " + std::to_string(geometry.width) +
                     "x" + std::to_string(geometry.height) + " image");
  }
  return r;
}

Point2D UniformIn(const Region& r, CounterRng& rng) {
  const double x = r.x0 + (r.x1 - r.x0) * rng.NextUniform();
  const double y = r.y0 + (r.y1 - r.y0) * rng.NextUniform();
  return {x, y};
}

}  // namespace

CentroidSet GenerateScene(const SceneParams& params) {
  if (!(params.min_separation >= 0.0)) {
    throw InputError("min separation must be >= 0");
  }
  CentroidSet points;
  if (params.n == 0) return points;
  const Region region = BufferedRegion(params.geometry, params.edge_buffer);
  CounterRng rng(params.seed);
  const std::size_t budget =
      std::max<std::size_t>(1000, params.attempts_per_point * params.n);
  std::size_t attempts = 0;
  points.reserve(params.n);
  while (points.size() < params.n) {
    if (attempts++ >= budget) {
      throw InputError("cannot place " + std::to_string(params.n) +
                       " points at separation " +
                       std::to_string(params.min_separation) + " after " +
                       std::to_string(budget) + " attempts");
    }
    const Point2D p = UniformIn(region, rng);
    if (FarFromAll(p, points, params.min_separation)) points.push_back(p);
  }
  return points;
}

PerturbResult Perturb(std::span<const Point2D> gt, const PerturbParams& params) {
  if (!(params.jitter_sigma >= 0.0)) throw ParameterError("jitter must be >= 0");
  if (!(params.drop_rate >= 0.0 && params.drop_rate <= 1.0)) {
    throw ParameterError("drop rate must be in [0, 1]");
  }
  if (!(params.spurious_rate >= 0.0)) {
    throw ParameterError("spurious rate must be >= 0");
  }
  CounterRng rng(params.seed);
  PerturbResult result;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    // One uniform and two normals per point keep the stream aligned
    // regardless of which branch is taken.
    const double u = rng.NextUniform();
    const double jx = rng.NextGaussian();
    const double jy = rng.NextGaussian();
    if (u < params.drop_rate) {
      result.dropped.push_back(i);
      continue;
    }
    result.points.push_back({gt[i].x + params.jitter_sigma * jx,
                             gt[i].y + params.jitter_sigma * jy});
  }

  const std::uint64_t spurious =
      rng.NextPoisson(params.spurious_rate * static_cast<double>(gt.size()));
  if (spurious == 0) return result;
  const Region region =
      BufferedRegion(params.geometry, params.spurious_edge_buffer);
  const CentroidSet anchors(gt.begin(), gt.end());
  const std::size_t budget = 10000 * static_cast<std::size_t>(spurious) + 1000;
  std::size_t attempts = 0;
  while (result.spurious_count < spurious) {
    if (attempts++ >= budget) {
      throw InputError("cannot place spurious points at distance " +
                       std::to_string(params.spurious_min_distance));
    }
    const Point2D p = UniformIn(region, rng);
    if (!FarFromAll(p, anchors, params.spurious_min_distance)) continue;
    result.points.push_back(p);
    ++result.spurious_count;
  }
  return result;
}

}  // namespace celldet
