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

// On-disk formats.
//
//  Centroid CSV   UTF-8, header line `x,y`, one point per line, LF endings.
//                 A zero-byte file reads as an empty set.
//                 Values are written in shortest round-trip form.
//  Polygon JSON   array of polygons, each an array of [x, y] pairs.
//  PFM            grayscale `Pf`, scale -1.0 (little-endian float32), rows
//                 stored bottom-to-top. Positive scales (big-endian) are
//                 accepted on read.
//  PGM            binary `P5`. Written with maxval 65535 and big-endian
//                 16-bit samples; 8-bit files (maxval < 256) are accepted on
//                 read.
//
// The Parse/Decode functions take the whole file content; `source` only
// labels diagnostics. Every malformed input raises FormatError with a line
// number (text) or byte offset (binary).

#ifndef CELLDET_IO_H_
#define CELLDET_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "celldet/density.h"
#include "celldet/extraction.h"
#include "celldet/geometry.h"

namespace celldet {

std::string ReadFileBytes(const std::filesystem::path& path);
// Writes through a temporary sibling and renames it into place.
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

CentroidSet ParseCentroidCsv(std::string_view text,
                             const std::string& source = "<memory>");
std::string FormatCentroidCsv(std::span<const Point2D> points);
CentroidSet ReadCentroidCsv(const std::filesystem::path& path);
void WriteCentroidCsv(const std::filesystem::path& path,
                      std::span<const Point2D> points);

std::vector<Polygon> ParsePolygonsJson(std::string_view text,
                                       const std::string& source = "<memory>");
std::vector<Polygon> ReadPolygonsJson(const std::filesystem::path& path);

DensityMap DecodePfm(std::string_view bytes,
                     const std::string& source = "<memory>");
std::string EncodePfm(const DensityMap& map);
DensityMap ReadPfm(const std::filesystem::path& path);
void WritePfm(const std::filesystem::path& path, const DensityMap& map);

LabelMask DecodePgm(std::string_view bytes,
                    const std::string& source = "<memory>");
std::string EncodePgm(const LabelMask& mask);
LabelMask ReadPgm(const std::filesystem::path& path);
void WritePgm(const std::filesystem::path& path, const LabelMask& mask);

}  // namespace celldet

#endif  // CELLDET_IO_H_
