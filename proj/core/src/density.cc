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

#include "celldet/density.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "celldet/errors.h"

namespace celldet {

DensityMap::DensityMap(ImageGeometry geometry) : geometry_(geometry) {
  ValidateGeometry(geometry);
  values_.assign(geometry.PixelCount(), 0.0f);
}

DensityMap::DensityMap(ImageGeometry geometry, std::vector<float> values)
    : geometry_(geometry), values_(std::move(values)) {
  ValidateGeometry(geometry);
  if (values_.size() != geometry.PixelCount()) {
    throw InputError("density map expects " +
                     std::to_string(geometry.PixelCount()) + " values, got " +
                     std::to_string(values_.size()));
  }
}

int GaussianRadius(double sigma) {
  return static_cast<int>(std::ceil(3.0 * sigma));
}

namespace {

std::vector<double> GaussianKernel1D(double sigma,
                                     KernelNormalization normalization) {
  const int radius = GaussianRadius(sigma);
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double v = std::exp(-(k * k) / (2.0 * sigma * sigma));
    kernel[k + radius] = v;
    sum += v;
  }
  // The center tap is exp(0) = 1 already, so peak-one needs no scaling.
  if (normalization == KernelNormalization::kSumOne) {
    for (double& v : kernel) v /= sum;
  }
  return kernel;
}

}  // namespace

DensityMap GaussianBlur(const DensityMap& map, double sigma,
                        KernelNormalization normalization) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("gaussian sigma must be > 0");
  }
  const std::vector<double> kernel = GaussianKernel1D(sigma, normalization);
  const int radius = static_cast<int>(kernel.size() / 2);
  const int w = map.width();
  const int h = map.height();

  // Horizontal pass into a double buffer, then vertical pass.
  std::vector<double> tmp(map.geometry().PixelCount(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int lo = std::max(-radius, -x);
      const int hi = std::min(radius, w - 1 - x);
      double acc = 0.0;
      for (int k = lo; k <= hi; ++k) {
        acc += kernel[k + radius] * map.at(x + k, y);
      }
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  DensityMap out(map.geometry());
  for (int y = 0; y < h; ++y) {
    const int lo = std::max(-radius, -y);
    const int hi = std::min(radius, h - 1 - y);
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = lo; k <= hi; ++k) {
        acc += kernel[k + radius] * tmp[static_cast<std::size_t>(y + k) * w + x];
      }
      out.at(x, y) = static_cast<float>(acc);
    }
  }
  return out;
}

DensityMap DilateDisk(const DensityMap& mask, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw ParameterError("dilation radius must be >= 0");
  }
  const int r = static_cast<int>(std::floor(radius));
  const double r2 = radius * radius;
  std::vector<std::pair<int, int>> offsets;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx * dx + dy * dy <= r2) offsets.emplace_back(dx, dy);
    }
  }
  DensityMap out(mask.geometry());
  const int w = mask.width();
  const int h = mask.height();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (mask.at(x, y) == 0.0f) continue;
      for (const auto& [dx, dy] : offsets) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx >= 0 && nx < w && ny >= 0 && ny < h) out.at(nx, ny) = 1.0f;
      }
    }
  }
  return out;
}

DensityMap Downsample(const DensityMap& map, int factor) {
  if (factor < 1) throw ParameterError("downsample factor must be >= 1");
  if (factor == 1) return map;
  const ImageGeometry g{(map.width() + factor - 1) / factor,
                        (map.height() + factor - 1) / factor};
  DensityMap out(g);
  const double inv_area = 1.0 / (static_cast<double>(factor) * factor);
  for (int oy = 0; oy < g.height; ++oy) {
    for (int ox = 0; ox < g.width; ++ox) {
      double acc = 0.0;
      for (int y = oy * factor; y < std::min((oy + 1) * factor, map.height());
           ++y) {
        for (int x = ox * factor; x < std::min((ox + 1) * factor, map.width());
             ++x) {
          acc += map.at(x, y);
        }
      }
      out.at(ox, oy) = static_cast<float>(acc * inv_area);
    }
  }
  return out;
}

double ToDownsampled(double full, int factor) {
  return (full + 0.5) / factor - 0.5;
}

double ToFullResolution(double downsampled, int factor) {
  return factor * (downsampled + 0.5) - 0.5;
}

int RoundToPixel(double v) { return static_cast<int>(std::floor(v + 0.5)); }

void ValidateCentroidsInside(std::span<const Point2D> centroids,
                             ImageGeometry geometry) {
  ValidateGeometry(geometry);
  std::string offending;
  std::size_t count = 0;
  for (std::size_t i = 0; i < centroids.size(); ++i) {
    const Point2D p = centroids[i];
    const bool inside = IsFinite(p) && RoundToPixel(p.x) >= 0 &&
                        RoundToPixel(p.x) < geometry.width &&
                        RoundToPixel(p.y) >= 0 &&
                        RoundToPixel(p.y) < geometry.height;
    if (!inside) {
      if (count++ > 0) offending += ", ";
      offending += std::to_string(i);
    }
  }
  if (count > 0) {
    throw InputError("centroid(s) outside " + std::to_string(geometry.width) +
                     "x" + std::to_string(geometry.height) +
                     " image at index " + offending);
  }
}

DensityMap RenderFcrnGt(std::span<const Point2D> centroids,
                        ImageGeometry geometry, const FcrnGtParams& params) {
  if (!(params.dilation_radius >= 0.0)) {
    throw ParameterError("dilation radius must be >= 0");
  }
  if (!(params.sigma > 0.0)) throw ParameterError("gaussian sigma must be > 0");
  ValidateCentroidsInside(centroids, geometry);

  DensityMap mask(geometry);
  for (const Point2D& p : centroids) {
    mask.at(RoundToPixel(p.x), RoundToPixel(p.y)) = 1.0f;
  }
  DensityMap out = GaussianBlur(DilateDisk(mask, params.dilation_radius),
                                params.sigma, KernelNormalization::kSumOne);
  // Rounding in the blur can overshoot 1 by an ulp.
  for (float& v : out.values()) v = std::clamp(v, 0.0f, 1.0f);
  return out;
}

DensityMap RenderIfcrnGt(std::span<const Point2D> centroids,
                         ImageGeometry geometry, const IfcrnGtParams& params) {
  if (!(params.sigma > 0.0)) throw ParameterError("gaussian sigma must be > 0");
  if (params.downsample_factor < 1) {
    throw ParameterError("downsample factor must be >= 1");
  }
  ValidateCentroidsInside(centroids, geometry);

  const int f = params.downsample_factor;
  const ImageGeometry ds{(geometry.width + f - 1) / f,
                         (geometry.height + f - 1) / f};
  DensityMap out(ds);
  const int radius = GaussianRadius(params.sigma);
  std::vector<float> taps(2 * radius + 1);
  for (int k = -radius; k <= radius; ++k) {
    taps[k + radius] = static_cast<float>(
        std::exp(-(k * k) / (2.0 * params.sigma * params.sigma)));
  }
  for (const Point2D& p : centroids) {
    const int cx = std::clamp(RoundToPixel(ToDownsampled(p.x, f)), 0,
                              ds.width - 1);
    const int cy = std::clamp(RoundToPixel(ToDownsampled(p.y, f)), 0,
                              ds.height - 1);
    for (int dy = -radius; dy <= radius; ++dy) {
      const int y = cy + dy;
      if (y < 0 || y >= ds.height) continue;
      for (int dx = -radius; dx <= radius; ++dx) {
        const int x = cx + dx;
        if (x < 0 || x >= ds.width) continue;
        const float v = taps[dx + radius] * taps[dy + radius];
        out.at(x, y) = std::max(out.at(x, y), v);
      }
    }
  }
  return out;
}

}  // namespace celldet
