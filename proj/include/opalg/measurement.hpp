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
#include <vector>

#include "opalg/composite.hpp"
#include "opalg/states.hpp"

namespace opalg {

struct MeasurementRecord {
  double outcome = 0.0;
  double probability = 0.0;
  /// Absent when the outcome probability is below 1e-12.
  std::optional<State> post_state;
};

struct PvmResult {
  std::vector<MeasurementRecord> records;
  /// sum_l P_l rho P_l
  State unobserved;
};

/// Born probabilities and Lueders post-states for each spectral value of `observable`.
PvmResult pvm_measure(const State &pi, const DenseOperator &observable);

/// p^-1 P rho P with p = pi(P); throws ZeroProbability when p < 1e-12.
State luders_update(const State &pi, const DenseOperator &projector);

/// Spectral projector of a Hermitian operator for `outcome`; throws Domain if absent.
DenseOperator spectral_projector(const DenseOperator &observable, double outcome);

/// Post-selected partial measurement of `local` on `site`: the density is
/// first replaced by rho_site (x) rho_rest, then the site factor is updated.
State ppm_measure(const State &pi, const FactorLayout &layout, std::size_t site,
                  const DenseOperator &local, double outcome);

struct SquareResult {
  bool closes = false;
  double state_distance = 0.0;
  State lambda_then_gamma;
  State gamma_then_lambda;
};

SquareResult measurement_square(const State &pi, const DenseOperator &lambda_op,
                                const DenseOperator &gamma_op, double lambda, double gamma);

struct RsBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

/// 1/4 |pi([L,G])|^2 + |pi(L o G) - pi(L) pi(G)|^2 <= var(L) var(G).
RsBound rs_bound(const State &pi, const DenseOperator &lambda_op, const DenseOperator &gamma_op);

}  // namespace opalg
