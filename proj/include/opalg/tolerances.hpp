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

#include <cstddef>

// Numerical thresholds shared across modules.
namespace opalg::tol {

inline constexpr double kDrop = 1e-14;          // symbolic coefficient merge
inline constexpr double kHermitian = 1e-10;     // absolute Hermiticity check
inline constexpr double kEigCluster = 1e-8;     // relative to ||A||
inline constexpr double kPositive = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kKernelRel = 1e-10;     // Gram singular values
inline constexpr double kZeroProbability = 1e-12;
inline constexpr double kKrausZero = 1e-12;     // eigenvalues below are dropped
inline constexpr double kCpViolation = 1e-9;    // eigenvalues below are fatal
inline constexpr double kShadowRank = 1e-10;

inline constexpr std::size_t kMaxDenseDim = 4096;
inline constexpr std::size_t kMaxGroupOrder = std::size_t{1} << 16;

}  // namespace opalg::tol
