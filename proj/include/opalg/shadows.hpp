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

#include <cstdint>
#include <string>
#include <vector>

#include "opalg/dense.hpp"
#include "opalg/states.hpp"

namespace opalg {

/// Random-basis measurement scheme: conjugate by U drawn uniformly from
/// `group`, then measure the PVM `pvm`.
struct ShadowScheme {
  std::vector<Matrix> group;
  std::vector<Matrix> pvm;
  /// M on row-stacked vectors: (1/|G|) sum_{U,l} |Q>><<Q| with Q = U* P_l U.
  Matrix m;
  Matrix m_inv;
  bool tomographically_complete = false;
  std::size_t dim = 0;
};

/// Throws Domain for non-unitary group elements or an invalid PVM.
ShadowScheme shadow_channel(const std::vector<Matrix> &group, const std::vector<Matrix> &pvm);
/// Computational-basis projectors.
std::vector<Matrix> computational_pvm(std::size_t dim);
/// The six single-qubit basis rotations {I, X, H, XH, HS*, XHS*}.
std::vector<Matrix> pauli_rotations();
/// Products of pauli_rotations() over n qubits with the computational basis.
ShadowScheme pauli_scheme(std::uint32_t qubits);

/// M(rho) and, for complete schemes, M^-1(rho).
Matrix apply_m(const ShadowScheme &s, const Matrix &rho);
Matrix apply_m_inv(const ShadowScheme &s, const Matrix &rho);

struct ShadowOutcome {
  std::uint32_t unitary = 0;
  std::uint32_t outcome = 0;
};

/// U* P_l U for one outcome.
Matrix snapshot(const ShadowScheme &s, const ShadowOutcome &o);
/// M^-1(U* P_l U).
Matrix shadow_operator(const ShadowScheme &s, const ShadowOutcome &o);

/// Seeded draws; identical for any thread count. Throws IncompleteScheme.
std::vector<ShadowOutcome> sample_outcomes(const ShadowScheme &s, const State &pi, std::size_t shots,
                                           std::uint64_t seed);
std::vector<Matrix> sample_shadows(const ShadowScheme &s, const State &pi, std::size_t shots, std::uint64_t seed);

/// Median over `batches` contiguous batch means of tr(shadow A), per Hermitian A.
std::vector<double> estimate(const std::vector<Matrix> &shadows, const std::vector<DenseOperator> &observables,
                             std::size_t batches);

/// sum_{U,l} p_{U,l} M^-1(U* P_l U) / |G|, by exhaustive enumeration.
Matrix exact_shadow_mean(const ShadowScheme &s, const State &pi);

struct ShadowNormEstimate {
  double value = 0.0;
  std::size_t samples = 0;
  std::string formula;
};

/// max over sampled pure states k of E_{U, l | k}[tr(Q_{U,l} M^-1(A))^2].
ShadowNormEstimate shadow_norm_estimate(const ShadowScheme &s, const DenseOperator &a, std::size_t samples,
                                        std::uint64_t seed);

struct ShadowDemo {
  std::uint32_t qubits = 0;
  std::size_t shots = 0;
  std::size_t batches = 0;
  std::uint64_t seed = 0;
  std::string state_name;
  std::vector<std::string> labels;
  std::vector<double> estimates;
  std::vector<double> exact_values;
  std::vector<double> errors;
};

/// Estimates every Pauli expectation of |0> (1 qubit), Bell (2) or GHZ (3, 4).
ShadowDemo shadow_demo(std::uint32_t qubits, std::size_t shots, std::size_t batches, std::uint64_t seed);

}  // namespace opalg
