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

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "opalg/tolerances.hpp"

namespace opalg {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Square complex matrix with finite entries. This is the concrete side of
/// every representation in the library: densities, observables, Kraus
/// operators and superoperators are all DenseOperators.
class DenseOperator {
 public:
  /// Zero operator of the given dimension.
  explicit DenseOperator(std::size_t dim);
  /// Throws Domain on non-square or non-finite input, DimensionOverflow past
  /// the dense cap.
  explicit DenseOperator(Matrix m);

  static DenseOperator identity(std::size_t dim);
  /// Matrix unit |row><col|.
  static DenseOperator unit(std::size_t dim, std::size_t row, std::size_t col);
  /// Rank-1 operator |v><v|.
  static DenseOperator outer(const Vector &v);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix &matrix() const { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  DenseOperator adjoint() const;
  DenseOperator transpose() const;
  cplx trace() const { return m_.trace(); }

  bool is_hermitian(double tol = tol::kHermitian) const;
  bool is_unitary(double tol = tol::kUnitary) const;
  bool is_projector(double tol = tol::kHermitian) const;
  /// Max-abs entry distance.
  double distance(const DenseOperator &other) const;
  bool approx_equal(const DenseOperator &other, double tol) const {
    return distance(other) <= tol;
  }

  DenseOperator &operator+=(const DenseOperator &o);
  DenseOperator &operator-=(const DenseOperator &o);
  DenseOperator &operator*=(cplx s);

  friend DenseOperator operator+(DenseOperator a, const DenseOperator &b) {
    return a += b;
  }
  friend DenseOperator operator-(DenseOperator a, const DenseOperator &b) {
    return a -= b;
  }
  friend DenseOperator operator*(const DenseOperator &a, const DenseOperator &b);
  friend DenseOperator operator*(cplx s, DenseOperator a) { return a *= s; }
  friend DenseOperator operator*(DenseOperator a, cplx s) { return a *= s; }
  friend Vector operator*(const DenseOperator &a, const Vector &v) {
    return a.m_ * v;
  }

 private:
  Matrix m_;
};

/// Commutator AB - BA.
DenseOperator commutator(const DenseOperator &a, const DenseOperator &b);
/// Jordan product (AB + BA) / 2.
DenseOperator jordan(const DenseOperator &a, const DenseOperator &b);

/// Trace norm ||A||_1 of a Hermitian operator, halved: the trace distance
/// between two densities is trace_distance(rho, sigma).
double trace_distance(const DenseOperator &a, const DenseOperator &b);

/// Eigenvalue-grouped spectral resolution of a Hermitian operator.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;          // ascending, deduplicated
  std::vector<DenseOperator> projectors;    // one per eigenvalue

  std::size_t size() const { return eigenvalues.size(); }
  DenseOperator reconstruct() const;
};

/// Hermitian eigendecomposition with eigenvalues merged when closer than
/// kEigCluster * ||A||. Throws Domain for non-Hermitian input.
SpectralDecomposition eig_hermitian(const DenseOperator &a);

/// Raw ascending eigenvalues of a Hermitian operator (no clustering).
Eigen::VectorXd eigenvalues_hermitian(const DenseOperator &a);

/// Operator norm, sqrt of the top eigenvalue of A*A.
double op_norm(const DenseOperator &a);

/// Hermitian within tol and no eigenvalue below -tol.
bool is_positive(const DenseOperator &a, double tol = tol::kPositive);

/// f(A) = sum_i f(l_i) P_i over the spectral decomposition of Hermitian A.
DenseOperator apply_function(const std::function<cplx(double)> &f,
                             const DenseOperator &a);

/// Orthonormal basis (columns) of the null space of M, using singular values
/// below rel_tol * s_max (absolute floor abs_tol when M vanishes).
Matrix null_space(const Matrix &m, double rel_tol, double abs_tol = 1e-14);

/// Numerical rank with the same rule as null_space.
std::size_t numerical_rank(const Matrix &m, double rel_tol,
                           double abs_tol = 1e-14);

}  // namespace opalg
