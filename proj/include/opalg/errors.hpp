// Copyright 2026 The opalg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace opalg {

/// Machine-readable error category. The CLI reports it as `error.kind`.
enum class ErrorKind {
  SpecMismatch,
  DimensionOverflow,
  Domain,
  UnsupportedInput,
  NotProjectivelyCommuting,
  NonCommutingGenerators,
  InconsistentPhase,
  NotCompletelyPositive,
  ZeroProbability,
  IncompleteScheme,
  Parse,
  Io,
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax error in an operator expression; `position` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string &message)
      : Error(ErrorKind::Parse, message), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Raised by Kraus extraction when the Choi matrix has an eigenvalue below
/// the CP tolerance.
class NotCompletelyPositiveError : public Error {
 public:
  NotCompletelyPositiveError(double eigenvalue, const std::string &message)
      : Error(ErrorKind::NotCompletelyPositive, message),
        eigenvalue_(eigenvalue) {}

  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

}  // namespace opalg
