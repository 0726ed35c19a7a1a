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


#include "opalg/measurement.hpp"

#include <cmath>
#include <string>

#include "opalg/errors.hpp"
#include "opalg/format.hpp"
#include "opalg/tolerances.hpp"

namespace opalg {

namespace {

// Clears round-off so the result passes State validation.
DenseOperator tidy_density(const Matrix &m) {
  Matrix h = 0.5 * (m + m.adjoint());
  return DenseOperator(h / h.trace().real());
}

}  // namespace

State luders_update(const State &pi, const DenseOperator &projector) {
  const double p = expect(pi, projector).real();
  if (p < tol::kZeroProbability)
    throw Error(ErrorKind::ZeroProbability, "outcome probability " + format_double(p) + " is below 1e-12");
  const Matrix &pm = projector.matrix();
  return State(tidy_density(pm * pi.density().matrix() * pm), pi.spec());
}

PvmResult pvm_measure(const State &pi, const DenseOperator &observable) {
  if (observable.dim() != pi.dim())
    throw Error(ErrorKind::SpecMismatch, "observable dimension does not match the state");
  const SpectralDecomposition spec = eig_hermitian(observable);
  std::vector<MeasurementRecord> records;
  Matrix unobserved = Matrix::Zero(pi.density().matrix().rows(), pi.density().matrix().cols());
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    const Matrix &pm = spec.projectors[k].matrix();
    MeasurementRecord rec;
    rec.outcome = spec.eigenvalues[k];
    rec.probability = std::max(0.0, expect(pi, spec.projectors[k]).real());
    const Matrix branch = pm * pi.density().matrix() * pm;
    unobserved += branch;
    if (rec.probability >= tol::kZeroProbability) rec.post_state = State(tidy_density(branch), pi.spec());
    records.push_back(std::move(rec));
  }
  return PvmResult{std::move(records), State(tidy_density(unobserved), pi.spec())};
}

DenseOperator spectral_projector(const DenseOperator &observable, double outcome) {
  const SpectralDecomposition spec = eig_hermitian(observable);
  double scale = 1.0;
  for (double l : spec.eigenvalues) scale = std::max(scale, std::abs(l));
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k)
    if (std::abs(spec.eigenvalues[k] - outcome) <= tol::kEigCluster * scale) return spec.projectors[k];
  throw Error(ErrorKind::Domain, "outcome " + format_double(outcome) + " is not in the spectrum");
}

State ppm_measure(const State &pi, const FactorLayout &layout, std::size_t site,
                  const DenseOperator &local, double outcome) {
  if (site >= layout.sites())
    throw Error(ErrorKind::Domain, "site index " + std::to_string(site + 1) + " out of range");
  if (pi.dim() != layout.total_dim()) throw Error(ErrorKind::SpecMismatch, "state does not match layout");
  if (local.dim() != layout.local_dims()[site])
    throw Error(ErrorKind::SpecMismatch, "local observable does not match site dimension");
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < layout.sites(); ++k)
    if (k != site) rest.push_back(k);
  const State local_state(partial_trace(pi.density(), layout, {site}));
  const DenseOperator rest_density = partial_trace(pi.density(), layout, rest);
  const State updated = luders_update(local_state, spectral_projector(local, outcome));
  return State(place(updated.density(), {site}, rest_density, layout), pi.spec());
}

SquareResult measurement_square(const State &pi, const DenseOperator &lambda_op,
                                const DenseOperator &gamma_op, double lambda, double gamma) {
  const DenseOperator pl = spectral_projector(lambda_op, lambda);
  const DenseOperator pg = spectral_projector(gamma_op, gamma);
  State lg = luders_update(luders_update(pi, pl), pg);
  State gl = luders_update(luders_update(pi, pg), pl);
  const double dist = trace_distance(lg.density(), gl.density());
  return SquareResult{dist <= 1e-9, dist, std::move(lg), std::move(gl)};
}

RsBound rs_bound(const State &pi, const DenseOperator &lambda_op, const DenseOperator &gamma_op) {
  const cplx comm = expect(pi, commutator(lambda_op, gamma_op));
  const cplx cov = expect(pi, jordan(lambda_op, gamma_op)) - expect(pi, lambda_op) * expect(pi, gamma_op);
  RsBound r;
  r.lhs = 0.25 * std::norm(comm) + std::norm(cov);
  r.rhs = variance(pi, lambda_op) * variance(pi, gamma_op);
  r.satisfied = r.lhs <= r.rhs + 1e-10;
  return r;
}

}  // namespace opalg
