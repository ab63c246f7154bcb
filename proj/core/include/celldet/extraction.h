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

// Turning raster predictions into centroid sets: thresholded connected
// components, local maxima, and label masks from segmentation tools.

#ifndef CELLDET_EXTRACTION_H_
#define CELLDET_EXTRACTION_H_

#include <cstdint>
#include <vector>

#include "celldet/density.h"
#include "celldet/geometry.h"

namespace celldet {

enum class Connectivity { kFour = 4, kEight = 8 };

struct ThresholdExtractParams {
  double threshold = 0.58;  // foreground is value >= threshold
  Connectivity connectivity = Connectivity::kEight;
  int min_component_area = 1;
};

struct MaximaExtractParams {
  double height = 0.4;
  int scale_factor = 4;  // maps detections back to full resolution
};

struct LabelMask {
  ImageGeometry geometry;
  std::vector<std::uint16_t> labels;  // row-major, 0 = background

  std::uint16_t at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * geometry.width + x];
  }
  friend bool operator==(const LabelMask&, const LabelMask&) = default;
};

void Validate(const ThresholdExtractParams& params);
void Validate(const MaximaExtractParams& params);

// Pixel-mean centroid of every connected component of {value >= threshold}
// with at least min_component_area pixels, ordered by the raster position of
// each component's first pixel.
CentroidSet ExtractThresholdCc(const DensityMap& map,
                               const ThresholdExtractParams& params);

// A pixel is a candidate if value >= height and value >= all 8 neighbours.
// 8-connected candidates of equal value (plateaus) collapse into one
// detection at their pixel mean, mapped to full resolution with
// ToFullResolution(., scale_factor). Raster order of first pixel.
CentroidSet ExtractLocalMaxima(const DensityMap& map,
                               const MaximaExtractParams& params);

// One centroid per nonzero label (pixel mean), ascending label order.
CentroidSet MaskToCentroids(const LabelMask& mask);

}  // namespace celldet

#endif  // CELLDET_EXTRACTION_H_
