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

#include "opalg/errors.hpp"

namespace opalg {

const char *to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SpecMismatch: return "spec_mismatch";
    case ErrorKind::DimensionOverflow: return "dimension_overflow";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::UnsupportedInput: return "unsupported_input";
    case ErrorKind::NotProjectivelyCommuting: return "not_projectively_commuting";
    case ErrorKind::NonCommutingGenerators: return "non_commuting_generators";
    case ErrorKind::InconsistentPhase: return "inconsistent_phase";
    case ErrorKind::NotCompletelyPositive: return "not_completely_positive";
    case ErrorKind::ZeroProbability: return "zero_probability";
    case ErrorKind::IncompleteScheme: return "incomplete_scheme";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace opalg
