// include/edge/error.h

// Copyright 2026  The edge-dialogue authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDGE_ERROR_H_
#define EDGE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number (0 when the
/// problem is not tied to one line, e.g. an empty file).
class ParseError : public Error {
 public:
  ParseError(const std::string &path, std::size_t line, const std::string &what)
      : Error(path + (line ? ":" + std::to_string(line) : std::string()) +
              ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace edge

#endif  // EDGE_ERROR_H_
