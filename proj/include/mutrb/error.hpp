// Copyright 2026 The mutrb Authors
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

#ifndef MUTRB_ERROR_HPP_
#define MUTRB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mutrb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source text does not conform to the grammar. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A mutation cannot be sampled or applied to the given genome.
class MutationError : public Error {
 public:
  using Error::Error;
};

/// Coverage map does not describe the genome it is used with.
class CoverageError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The unmutated program does not pass its own suite.
class OriginalFailsError : public Error {
 public:
  using Error::Error;
};

/// An experiment could not complete (stalled walk, unseedable defect, ...).
class ExperimentError : public Error {
 public:
  using Error::Error;
};

}  // namespace mutrb

#endif  // MUTRB_ERROR_HPP_
