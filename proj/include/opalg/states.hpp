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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "opalg/dense.hpp"
#include "opalg/pauli_algebra.hpp"

namespace opalg {

/// A state pi(A) = tr(rho A), stored as its density rho. The optional
/// AlgebraSpec records that the density lives on a Pauli algebra, which
/// selects the Pauli operator basis for GNS and definite-set computations.
class State {
 public:
  /// Validates Hermitian, positive and unit trace to 1e-10.
  explicit State(DenseOperator density, std::optional<AlgebraSpec> spec = std::nullopt);

  /// Vector state |psi><psi| (psi is normalized here).
  static State from_vector(const Vector &psi, std::optional<AlgebraSpec> spec = std::nullopt);
  /// pi_(b): the Z <- (-1)^b eigenfunctional on one qubit.
  static State fiducial(int b);
  /// pi_(p) = p pi_(0) + (1 - p) pi_(1), so pi_(p)(Z) = 2p - 1.
  static State coin(double p);
  static State maximally_mixed(std::size_t dim, std::optional<AlgebraSpec> spec = std::nullopt);

  std::size_t dim() const { return density_.dim(); }
  const DenseOperator &density() const { return density_; }
  const std::optional<AlgebraSpec> &spec() const { return spec_; }

  cplx operator()(const DenseOperator &a) const;
  cplx operator()(const OperatorSum &a) const;

 private:
  DenseOperator density_;
  std::optional<AlgebraSpec> spec_;
};

/// tr(rho A).
cplx expect(const State &pi, const DenseOperator &a);
/// G(B, A) = pi(B* A).
cplx correlation(const State &pi, const DenseOperator &b, const DenseOperator &a);
/// pi(G* G) - |pi(G)|^2 for self-adjoint G; throws Domain otherwise.
double variance(const State &pi, const DenseOperator &gamma);
/// ||A||_pi = sqrt(pi(A* A)).
double seminorm(const State &pi, const DenseOperator &a);

/// Linear basis of the operator algebra a state lives on.
struct OperatorBasis {
  std::vector<DenseOperator> elements;
  std::vector<std::string> labels;

  std::size_t size() const { return elements.size(); }
  /// sum_a c_a B_a.
  DenseOperator combine(const Vector &coeffs) const;
};

/// Self-adjoint Pauli basis for qubit algebras ("I", "X", "Y", "Z" strings in
/// lexicographic order), phase-free generalized Pauli words otherwise.
OperatorBasis pauli_basis(AlgebraSpec spec);
/// Matrix units E_ij, labelled "E<i>,<j>".
OperatorBasis matrix_unit_basis(std::size_t dim);
/// Self-adjoint real basis of M_dim: E_ii, E_ij + E_ji, i(E_ij - E_ji).
OperatorBasis hermitian_unit_basis(std::size_t dim);
/// pauli_basis when the state carries a spec, matrix units otherwise.
OperatorBasis default_basis(const State &pi);

/// Basis (columns, coordinates in `basis`) of the kernel
/// K = {A : pi(A* A) = 0}: the null space of the Gram matrix.
Matrix kernel_coefficients(const State &pi, const OperatorBasis &basis);
std::vector<DenseOperator> kernel_basis(const State &pi, const OperatorBasis &basis);
std::vector<DenseOperator> kernel_basis(const State &pi);

/// Real basis of self-adjoint operators with zero variance (to `tol`).
std::vector<DenseOperator> definite_set(const State &pi, double tol = 1e-10);

/// The GNS Hilbert space A / K_pi with A acting by left multiplication.
class GnsSpace {
 public:
  GnsSpace(State pi, OperatorBasis basis);

  std::size_t dim() const { return quotient_.size(); }
  const State &state() const { return pi_; }
  const OperatorBasis &basis() const { return basis_; }
  /// Gram matrix G_ab = pi(B_a* B_b).
  const Matrix &gram() const { return gram_; }
  const std::vector<DenseOperator> &kernel() const { return kernel_; }
  const Matrix &kernel_coefficients() const { return kernel_coeffs_; }
  /// Orthonormal representatives Q_i of the quotient basis [Q_i].
  const std::vector<DenseOperator> &quotient_basis() const { return quotient_; }
  /// Basis indices whose classes seeded the quotient basis, in order.
  const std::vector<std::size_t> &pivots() const { return pivots_; }

  /// Coordinates of [A] in the quotient basis: c_i = pi(Q_i* A).
  Vector coordinates(const DenseOperator &a) const;
  /// <[B], [A]> computed from quotient coordinates.
  cplx inner(const DenseOperator &b, const DenseOperator &a) const;
  /// Matrix of left multiplication by A on the quotient.
  Matrix action(const DenseOperator &a) const;

 private:
  State pi_;
  OperatorBasis basis_;
  Matrix gram_;
  Matrix kernel_coeffs_;
  std::vector<DenseOperator> kernel_;
  std::vector<std::size_t> pivots_;
  std::vector<DenseOperator> quotient_;
};

GnsSpace gns_construct(const State &pi);

/// e^{i delta} (I cos(theta) + i sin(theta) sigma(n)); n must be a real unit
/// vector within 1e-10.
DenseOperator pauli_exponential(double delta, double theta, const std::array<double, 3> &n);

/// State with density U rho U*; U unitary within 1e-10.
State conjugate_state(const State &pi, const DenseOperator &u);
/// Heisenberg conjugation U* A U.
DenseOperator conjugate_operator(const DenseOperator &a, const DenseOperator &u);

/// sum_i p_i rho_i; weights nonnegative and summing to one within 1e-12.
State mix_states(const std::vector<double> &weights, const std::vector<State> &states);

/// r_i = pi(sigma_i) for a qubit state.
std::array<double, 3> bloch_vector(const State &pi);
/// (I + r.sigma) / 2; |r| <= 1 + 1e-10.
State state_from_bloch(const std::array<double, 3> &r);
/// cos(t/2)|0> + i sin(t/2) e^{i phi}|1>. Its Bloch azimuth is phi + pi/2.
State state_from_angles(double theta, double phi);

/// Rank one to `tol`: second-largest density eigenvalue below tol.
bool is_pure(const State &pi, double tol = 1e-10);

}  // namespace opalg
