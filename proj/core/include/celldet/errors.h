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

#ifndef CELLDET_ERRORS_H_
#define CELLDET_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace celldet {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric parameter is outside its documented domain (sigma <= 0, f < 1 ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input data violates a precondition (NaN cost, out-of-bounds centroid,
// degenerate polygon, mismatched lengths ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Problem instance exceeds what an algorithm accepts (brute-force oracle).
class SizeError : public Error {
 public:
  using Error::Error;
};

// Malformed file content. Carries the location so diagnostics can name it:
// `line` for text formats, `byte_offset` for binary rasters. Either may be
// unset (-1).
class FormatError : public Error {
 public:
  FormatError(std::string path, std::int64_t line, std::int64_t byte_offset,
              const std::string& what);

  const std::string& path() const { return path_; }
  std::int64_t line() const { return line_; }
  std::int64_t byte_offset() const { return byte_offset_; }

 private:
  std::string path_;
  std::int64_t line_;
  std::int64_t byte_offset_;
};

}  // namespace celldet

#endif  // CELLDET_ERRORS_H_
