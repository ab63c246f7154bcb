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

// Density rasters and the fuzzy ground-truth renderings built from point
// annotations.
//
// Two renderings are provided:
//  * threshold-style (FCRN): binary mask at the rounded centroids, dilated by
//    a disk, then blurred with a sum-one Gaussian. Values stay in [0, 1].
//  * maxima-style (IFCRN): a peak-one Gaussian stamped per centroid on an
//    f-times downsampled grid, overlapping stamps combined by max.
//
// Full-resolution x maps to the downsampled grid as (x + 0.5) / f - 0.5 and
// back as f * (x_ds + 0.5) - 0.5 (block-center alignment).

#ifndef CELLDET_DENSITY_H_
#define CELLDET_DENSITY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "celldet/geometry.h"

namespace celldet {

class DensityMap {
 public:
  DensityMap() = default;
  // Zero-filled map. Throws ParameterError for an invalid geometry.
  explicit DensityMap(ImageGeometry geometry);
  // Throws InputError if values.size() does not match the geometry.
  DensityMap(ImageGeometry geometry, std::vector<float> values);

  const ImageGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }

  float at(int x, int y) const {
    return values_[static_cast<std::size_t>(y) * geometry_.width + x];
  }
  float& at(int x, int y) {
    return values_[static_cast<std::size_t>(y) * geometry_.width + x];
  }

  std::span<const float> values() const { return values_; }
  std::span<float> values() { return values_; }

  friend bool operator==(const DensityMap&, const DensityMap&) = default;

 private:
  ImageGeometry geometry_;
  std::vector<float> values_;
};

enum class KernelNormalization {
  kSumOne,   // 2D kernel integrates to 1 (mass preserving).
  kPeakOne,  // center tap is 1.
};

// Truncation radius ceil(3 sigma) used by every Gaussian in this module.
int GaussianRadius(double sigma);

// Separable convolution with exp(-k^2 / (2 sigma^2)), truncated at
// GaussianRadius(sigma), zero-padded borders. Throws ParameterError for
// sigma <= 0.
DensityMap GaussianBlur(const DensityMap& map, double sigma,
                        KernelNormalization normalization);

// Morphological dilation by the discrete disk {dx^2 + dy^2 <= r^2}. Any
// nonzero input pixel counts as foreground; the output is 0/1.
DensityMap DilateDisk(const DensityMap& mask, double radius);

// Block mean over f x f blocks. Sizes not divisible by f are zero-padded on
// the right/bottom, so the output geometry is ceil(w / f) x ceil(h / f).
// Throws ParameterError for f < 1.
DensityMap Downsample(const DensityMap& map, int factor);

double ToDownsampled(double full, int factor);
double ToFullResolution(double downsampled, int factor);

// Pixel holding the point under the integer-center convention, i.e.
// floor(v + 0.5).
int RoundToPixel(double v);

struct FcrnGtParams {
  double dilation_radius = 0.0;  // required; no published default
  double sigma = 1.0;
};

struct IfcrnGtParams {
  double sigma = 3.0;  // in downsampled pixels
  int downsample_factor = 4;
};

// Throws InputError listing every centroid that does not round to a pixel of
// `geometry` (or is non-finite).
void ValidateCentroidsInside(std::span<const Point2D> centroids,
                             ImageGeometry geometry);

DensityMap RenderFcrnGt(std::span<const Point2D> centroids,
                        ImageGeometry geometry, const FcrnGtParams& params);

// Output geometry is the downsampled geometry (see Downsample).
DensityMap RenderIfcrnGt(std::span<const Point2D> centroids,
                         ImageGeometry geometry, const IfcrnGtParams& params);

}  // namespace celldet

#endif  // CELLDET_DENSITY_H_
