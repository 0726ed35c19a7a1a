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

#include "opalg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opalg/errors.hpp"

namespace opalg {
namespace {

void check_dim(Eigen::Index dim) {
  if (dim < 1) throw Error(ErrorKind::Domain, "operator dimension must be >= 1");
  if (static_cast<std::size_t>(dim) > tol::kMaxDenseDim) {
    throw Error(ErrorKind::DimensionOverflow,
                "dimension " + std::to_string(dim) + " exceeds dense limit " +
                    std::to_string(tol::kMaxDenseDim));
  }
}

}  // namespace

DenseOperator::DenseOperator(std::size_t dim) {
  check_dim(static_cast<Eigen::Index>(dim));
  m_ = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

DenseOperator::DenseOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw Error(ErrorKind::Domain, "operator must be square");
  }
  check_dim(m_.rows());
  if (!m_.allFinite()) throw Error(ErrorKind::Domain, "operator has non-finite entries");
}

DenseOperator DenseOperator::identity(std::size_t dim) {
  check_dim(static_cast<Eigen::Index>(dim));
  return DenseOperator(Matrix::Identity(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim)));
}

DenseOperator DenseOperator::unit(std::size_t dim, std::size_t row, std::size_t col) {
  DenseOperator e(dim);
  e.m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return e;
}

DenseOperator DenseOperator::outer(const Vector &v) {
  return DenseOperator(Matrix(v * v.adjoint()));
}

DenseOperator DenseOperator::adjoint() const { return DenseOperator(Matrix(m_.adjoint())); }

DenseOperator DenseOperator::transpose() const {
  return DenseOperator(Matrix(m_.transpose()));
}

bool DenseOperator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool DenseOperator::is_unitary(double tol) const {
  const Matrix id = Matrix::Identity(m_.rows(), m_.cols());
  return (m_.adjoint() * m_ - id).cwiseAbs().maxCoeff() <= tol;
}

bool DenseOperator::is_projector(double tol) const {
  return is_hermitian(tol) && (m_ * m_ - m_).cwiseAbs().maxCoeff() <= tol;
}

double DenseOperator::distance(const DenseOperator &other) const {
  if (other.dim() != dim()) {
    throw Error(ErrorKind::SpecMismatch, "operator dimensions differ");
  }
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

DenseOperator &DenseOperator::operator+=(const DenseOperator &o) {
  if (o.dim() != dim()) throw Error(ErrorKind::SpecMismatch, "operator dimensions differ");
  m_ += o.m_;
  return *this;
}

DenseOperator &DenseOperator::operator-=(const DenseOperator &o) {
  if (o.dim() != dim()) throw Error(ErrorKind::SpecMismatch, "operator dimensions differ");
  m_ -= o.m_;
  return *this;
}

DenseOperator &DenseOperator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

DenseOperator operator*(const DenseOperator &a, const DenseOperator &b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::SpecMismatch, "operator dimensions differ");
  return DenseOperator(Matrix(a.m_ * b.m_));
}

DenseOperator commutator(const DenseOperator &a, const DenseOperator &b) {
  return a * b - b * a;
}

DenseOperator jordan(const DenseOperator &a, const DenseOperator &b) {
  return 0.5 * (a * b + b * a);
}

double trace_distance(const DenseOperator &a, const DenseOperator &b) {
  const DenseOperator diff = a - b;
  // Hermitian part only; callers pass densities.
  const Matrix h = 0.5 * (diff.matrix() + diff.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DenseOperator SpectralDecomposition::reconstruct() const {
  if (projectors.empty()) throw Error(ErrorKind::Domain, "empty decomposition");
  DenseOperator out(projectors.front().dim());
  for (std::size_t i = 0; i < size(); ++i) out += eigenvalues[i] * projectors[i];
  return out;
}

Eigen::VectorXd eigenvalues_hermitian(const DenseOperator &a) {
  if (!a.is_hermitian()) throw Error(ErrorKind::Domain, "operator is not Hermitian");
  const Matrix h = 0.5 * (a.matrix() + a.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

SpectralDecomposition eig_hermitian(const DenseOperator &a) {
  if (!a.is_hermitian()) throw Error(ErrorKind::Domain, "operator is not Hermitian");
  const Matrix h = 0.5 * (a.matrix() + a.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd &vals = es.eigenvalues();
  const Matrix &vecs = es.eigenvectors();
  const double scale = vals.cwiseAbs().maxCoeff();
  const double gap = tol::kEigCluster * scale;

  SpectralDecomposition out;
  const Eigen::Index dim = h.rows();
  Eigen::Index start = 0;
  while (start < dim) {
    Eigen::Index stop = start + 1;
    while (stop < dim && vals(stop) - vals(stop - 1) <= gap) ++stop;
    const Matrix block = vecs.middleCols(start, stop - start);
    out.eigenvalues.push_back(vals.segment(start, stop - start).mean());
    out.projectors.emplace_back(Matrix(block * block.adjoint()));
    start = stop;
  }
  return out;
}

double op_norm(const DenseOperator &a) {
  const Matrix aa = a.matrix().adjoint() * a.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(aa, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

bool is_positive(const DenseOperator &a, double tol) {
  if (!a.is_hermitian(tol)) return false;
  const Matrix h = 0.5 * (a.matrix() + a.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

DenseOperator apply_function(const std::function<cplx(double)> &f,
                             const DenseOperator &a) {
  const SpectralDecomposition sd = eig_hermitian(a);
  DenseOperator out(a.dim());
  for (std::size_t i = 0; i < sd.size(); ++i) out += f(sd.eigenvalues[i]) * sd.projectors[i];
  return out;
}

Matrix null_space(const Matrix &m, double rel_tol, double abs_tol) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd &s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double cut = std::max(rel_tol * smax, abs_tol);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

std::size_t numerical_rank(const Matrix &m, double rel_tol, double abs_tol) {
  return static_cast<std::size_t>(m.cols() - null_space(m, rel_tol, abs_tol).cols());
}

}  // namespace opalg
