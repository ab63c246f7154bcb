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

#include "celldet/io.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <nlohmann/json.hpp>

#include "celldet/errors.h"

namespace celldet {

namespace {

std::string Describe(const std::string& path, std::int64_t line,
                     std::int64_t byte_offset, const std::string& what) {
  std::string out = path;
  if (line >= 0) out += ":" + std::to_string(line);
  if (byte_offset >= 0) out += ": byte " + std::to_string(byte_offset);
  return out + ": " + what;
}

}  // namespace

FormatError::FormatError(std::string path, std::int64_t line,
                         std::int64_t byte_offset, const std::string& what)
    : Error(Describe(path, line, byte_offset, what)),
      path_(std::move(path)),
      line_(line),
      byte_offset_(byte_offset) {}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InputError("write failed for " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Centroid CSV

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool ParseDouble(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

void AppendDouble(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

CentroidSet ParseCentroidCsv(std::string_view text, const std::string& source) {
  CentroidSet points;
  // A zero-byte file is an empty set; anything else needs the header.
  if (text.empty()) return points;
  std::int64_t line_no = 0;
  bool seen_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    const std::string_view line = Trim(raw);
    if (!seen_header) {
      if (line != "x,y") {
        throw FormatError(source, line_no, -1, "expected header 'x,y'");
      }
      seen_header = true;
      continue;
    }
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos ||
        line.find(',', comma + 1) != std::string_view::npos) {
      throw FormatError(source, line_no, -1, "expected two fields 'x,y'");
    }
    Point2D p;
    if (!ParseDouble(Trim(line.substr(0, comma)), p.x) ||
        !ParseDouble(Trim(line.substr(comma + 1)), p.y)) {
      throw FormatError(source, line_no, -1,
                        "invalid number in '" + std::string(line) + "'");
    }
    points.push_back(p);
  }
  if (!seen_header) throw FormatError(source, 1, -1, "missing header 'x,y'");
  return points;
}

std::string FormatCentroidCsv(std::span<const Point2D> points) {
  std::string out = "x,y\n";
  for (const Point2D& p : points) {
    AppendDouble(out, p.x);
    out += ',';
    AppendDouble(out, p.y);
    out += '\n';
  }
  return out;
}

CentroidSet ReadCentroidCsv(const std::filesystem::path& path) {
  return ParseCentroidCsv(ReadFileBytes(path), path.string());
}

void WriteCentroidCsv(const std::filesystem::path& path,
                      std::span<const Point2D> points) {
  ValidateCentroids(points);
  WriteFileBytes(path, FormatCentroidCsv(points));
}

// ---------------------------------------------------------------------------
// Polygon JSON

std::vector<Polygon> ParsePolygonsJson(std::string_view text,
                                       const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(source, -1, static_cast<std::int64_t>(e.byte > 0 ? e.byte - 1 : 0),
                      "invalid JSON");
  }
  if (!doc.is_array()) {
    throw FormatError(source, -1, -1, "expected an array of polygons");
  }
  std::vector<Polygon> polygons;
  polygons.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& poly = doc[i];
    if (!poly.is_array()) {
      throw FormatError(source, -1, -1,
                        "polygon " + std::to_string(i) + " is not an array");
    }
    Polygon polygon;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const auto& v = poly[k];
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
          !v[1].is_number()) {
        throw FormatError(source, -1, -1,
                          "polygon " + std::to_string(i) + " vertex " +
                              std::to_string(k) + " is not an [x, y] pair");
      }
      polygon.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    polygons.push_back(std::move(polygon));
  }
  return polygons;
}

std::vector<Polygon> ReadPolygonsJson(const std::filesystem::path& path) {
  return ParsePolygonsJson(ReadFileBytes(path), path.string());
}

// ---------------------------------------------------------------------------
// Netpbm header scanning shared by PFM and PGM.

namespace {

class HeaderReader {
 public:
  HeaderReader(std::string_view bytes, const std::string& source,
               bool allow_comments)
      : bytes_(bytes), source_(source), allow_comments_(allow_comments) {}

  [[noreturn]] void Fail(const std::string& what) const {
    throw FormatError(source_, -1, static_cast<std::int64_t>(pos_), what);
  }

  void ExpectMagic(std::string_view magic) {
    if (bytes_.substr(0, magic.size()) != magic) {
      Fail("expected magic '" + std::string(magic) + "'");
    }
    pos_ = magic.size();
  }

  std::string_view Token() {
    SkipSpace();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !IsSpace(bytes_[pos_])) ++pos_;
    if (start == pos_) Fail("unexpected end of header");
    return bytes_.substr(start, pos_ - start);
  }

  long long Integer(const char* what) {
    const std::size_t at = (SkipSpace(), pos_);
    const std::string_view tok = Token();
    long long v = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      pos_ = at;
      Fail(std::string("invalid ") + what);
    }
    return v;
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t EndOfHeader() {
    if (pos_ >= bytes_.size() || !IsSpace(bytes_[pos_])) {
      Fail("expected whitespace after header");
    }
    return ++pos_;
  }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

 private:
  static bool IsSpace(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  }
  void SkipSpace() {
    while (pos_ < bytes_.size()) {
      if (IsSpace(bytes_[pos_])) {
        ++pos_;
      } else if (allow_comments_ && bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  const std::string& source_;
  bool allow_comments_;
  std::size_t pos_ = 0;
};

ImageGeometry ReadDimensions(HeaderReader& header) {
  const long long w = header.Integer("width");
  const long long h = header.Integer("height");
  constexpr long long kMaxSide = 1 << 20;
  if (w < 1 || h < 1 || w > kMaxSide || h > kMaxSide) {
    header.Fail("image dimensions out of range");
  }
  return {static_cast<int>(w), static_cast<int>(h)};
}

}  // namespace

// ---------------------------------------------------------------------------
// PFM

DensityMap DecodePfm(std::string_view bytes, const std::string& source) {
  HeaderReader header(bytes, source, /*allow_comments=*/false);
  if (bytes.substr(0, 2) == "PF") {
    header.Fail("color PFM ('PF') is not supported, expected 'Pf'");
  }
  header.ExpectMagic("Pf");
  const ImageGeometry g = ReadDimensions(header);
  const std::size_t scale_at = header.pos();
  const std::string_view scale_tok = header.Token();
  double scale = 0.0;
  if (!ParseDouble(scale_tok, scale) || scale == 0.0) {
    header.set_pos(scale_at);
    header.Fail("invalid scale");
  }
  const bool little = scale < 0.0;
  const std::size_t data = header.EndOfHeader();
  const std::size_t expected = g.PixelCount() * 4;
  if (bytes.size() - data < expected) {
    throw FormatError(source, -1, static_cast<std::int64_t>(bytes.size()),
                      "truncated raster: expected " + std::to_string(expected) +
                          " bytes after header");
  }
  if (bytes.size() - data > expected) {
    throw FormatError(source, -1, static_cast<std::int64_t>(data + expected),
                      "trailing bytes after raster");
  }
  std::vector<float> values(g.PixelCount());
  const bool host_little = std::endian::native == std::endian::little;
  for (int row = 0; row < g.height; ++row) {
    const int y = g.height - 1 - row;
    for (int x = 0; x < g.width; ++x) {
      const std::size_t off =
          data + (static_cast<std::size_t>(row) * g.width + x) * 4;
      std::uint32_t bits;
      std::memcpy(&bits, bytes.data() + off, 4);
      if (little != host_little) bits = __builtin_bswap32(bits);
      const float v = std::bit_cast<float>(bits);
      if (!std::isfinite(v)) {
        throw FormatError(source, -1, static_cast<std::int64_t>(off),
                          "non-finite sample");
      }
      values[static_cast<std::size_t>(y) * g.width + x] = v;
    }
  }
  return DensityMap(g, std::move(values));
}

std::string EncodePfm(const DensityMap& map) {
  const ImageGeometry g = map.geometry();
  std::string out = "Pf\n" + std::to_string(g.width) + " " +
                    std::to_string(g.height) + "\n-1.0\n";
  const std::size_t data = out.size();
  out.resize(data + g.PixelCount() * 4);
  const bool host_little = std::endian::native == std::endian::little;
  for (int row = 0; row < g.height; ++row) {
    const int y = g.height - 1 - row;
    for (int x = 0; x < g.width; ++x) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(map.at(x, y));
      if (!host_little) bits = __builtin_bswap32(bits);
      std::memcpy(out.data() + data +
                      (static_cast<std::size_t>(row) * g.width + x) * 4,
                  &bits, 4);
    }
  }
  return out;
}

DensityMap ReadPfm(const std::filesystem::path& path) {
  return DecodePfm(ReadFileBytes(path), path.string());
}

void WritePfm(const std::filesystem::path& path, const DensityMap& map) {
  WriteFileBytes(path, EncodePfm(map));
}

// ---------------------------------------------------------------------------
// PGM

LabelMask DecodePgm(std::string_view bytes, const std::string& source) {
  HeaderReader header(bytes, source, /*allow_comments=*/true);
  header.ExpectMagic("P5");
  const ImageGeometry g = ReadDimensions(header);
  const long long maxval = header.Integer("maxval");
  if (maxval < 1 || maxval > 65535) header.Fail("maxval must be in 1..65535");
  const std::size_t data = header.EndOfHeader();
  const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
  const std::size_t expected = g.PixelCount() * sample_bytes;
  if (bytes.size() - data < expected) {
    throw FormatError(source, -1, static_cast<std::int64_t>(bytes.size()),
                      "truncated raster: expected " + std::to_string(expected) +
                          " bytes after header");
  }
  if (bytes.size() - data > expected) {
    throw FormatError(source, -1, static_cast<std::int64_t>(data + expected),
                      "trailing bytes after raster");
  }
  LabelMask mask{g, std::vector<std::uint16_t>(g.PixelCount())};
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
  for (std::size_t i = 0; i < g.PixelCount(); ++i) {
    const std::size_t off = data + i * sample_bytes;
    const unsigned v = sample_bytes == 1
                           ? raw[off]
                           : (static_cast<unsigned>(raw[off]) << 8) | raw[off + 1];
    if (v > maxval) {
      throw FormatError(source, -1, static_cast<std::int64_t>(off),
                        "sample exceeds maxval");
    }
    mask.labels[i] = static_cast<std::uint16_t>(v);
  }
  return mask;
}

std::string EncodePgm(const LabelMask& mask) {
  const ImageGeometry g = mask.geometry;
  if (mask.labels.size() != g.PixelCount()) {
    throw InputError("label mask size does not match its geometry");
  }
  std::string out = "P5\n" + std::to_string(g.width) + " " +
                    std::to_string(g.height) + "\n65535\n";
  out.reserve(out.size() + g.PixelCount() * 2);
  for (std::uint16_t v : mask.labels) {
    out += static_cast<char>(v >> 8);
    out += static_cast<char>(v & 0xFF);
  }
  return out;
}

LabelMask ReadPgm(const std::filesystem::path& path) {
  return DecodePgm(ReadFileBytes(path), path.string());
}

void WritePgm(const std::filesystem::path& path, const LabelMask& mask) {
  WriteFileBytes(path, EncodePgm(mask));
}

}  // namespace celldet
