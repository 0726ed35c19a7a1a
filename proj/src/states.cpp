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

#include "opalg/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "opalg/errors.hpp"
#include "opalg/kernels.hpp"

namespace opalg {
namespace {

constexpr double kStateTol = 1e-10;

void require_dim(const State &pi, const DenseOperator &a) {
  if (a.dim() != pi.dim()) {
    throw Error(ErrorKind::SpecMismatch, "operator dimension " + std::to_string(a.dim()) +
                                             " does not match state dimension " +
                                             std::to_string(pi.dim()));
  }
}

std::vector<Matrix> matrices_of(const OperatorBasis &basis) {
  std::vector<Matrix> out;
  out.reserve(basis.size());
  for (const auto &b : basis.elements) out.push_back(b.matrix());
  return out;
}

DenseOperator pauli_matrix(int axis) {
  Matrix m(2, 2);
  switch (axis) {
    case 0: m << 0, 1, 1, 0; break;
    case 1: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return DenseOperator(m);
}

}  // namespace

State::State(DenseOperator density, std::optional<AlgebraSpec> spec)
    : density_(std::move(density)), spec_(spec) {
  if (spec_) {
    const auto dim = spec_->dense_dim();
    if (!dim || *dim != density_.dim()) {
      throw Error(ErrorKind::SpecMismatch, "density dimension does not match the algebra spec");
    }
  }
  if (!density_.is_hermitian(kStateTol)) {
    throw Error(ErrorKind::Domain, "density is not Hermitian");
  }
  if (std::abs(density_.trace() - 1.0) > kStateTol) {
    throw Error(ErrorKind::Domain, "density trace is not 1");
  }
  if (!is_positive(density_, kStateTol)) {
    throw Error(ErrorKind::Domain, "density is not positive");
  }
}

State State::from_vector(const Vector &psi, std::optional<AlgebraSpec> spec) {
  const double norm = psi.norm();
  if (norm == 0.0) throw Error(ErrorKind::Domain, "zero vector");
  return State(DenseOperator::outer(psi / norm), spec);
}

State State::fiducial(int b) {
  if (b != 0 && b != 1) throw Error(ErrorKind::Domain, "fiducial label must be 0 or 1");
  return State(DenseOperator::unit(2, static_cast<std::size_t>(b), static_cast<std::size_t>(b)),
               AlgebraSpec{2, 1});
}

State State::coin(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::Domain, "coin weight must lie in [0, 1]");
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = p;
  m(1, 1) = 1.0 - p;
  return State(DenseOperator(m), AlgebraSpec{2, 1});
}

State State::maximally_mixed(std::size_t dim, std::optional<AlgebraSpec> spec) {
  return State(DenseOperator::identity(dim) * cplx(1.0 / static_cast<double>(dim)), spec);
}

cplx State::operator()(const DenseOperator &a) const { return expect(*this, a); }

cplx State::operator()(const OperatorSum &a) const { return expect(*this, to_dense(a)); }

cplx expect(const State &pi, const DenseOperator &a) {
  require_dim(pi, a);
  return (pi.density().matrix().transpose().cwiseProduct(a.matrix())).sum();
}

cplx correlation(const State &pi, const DenseOperator &b, const DenseOperator &a) {
  return expect(pi, b.adjoint() * a);
}

double variance(const State &pi, const DenseOperator &gamma) {
  if (!gamma.is_hermitian()) throw Error(ErrorKind::Domain, "variance needs a self-adjoint operator");
  const double mean = expect(pi, gamma).real();
  return expect(pi, gamma * gamma).real() - mean * mean;
}

double seminorm(const State &pi, const DenseOperator &a) {
  return std::sqrt(std::max(0.0, correlation(pi, a, a).real()));
}

DenseOperator OperatorBasis::combine(const Vector &coeffs) const {
  if (static_cast<std::size_t>(coeffs.size()) != size() || elements.empty()) {
    throw Error(ErrorKind::SpecMismatch, "coefficient count does not match basis");
  }
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(elements.front().dim()),
                          static_cast<Eigen::Index>(elements.front().dim()));
  for (std::size_t i = 0; i < size(); ++i) m += coeffs(static_cast<Eigen::Index>(i)) * elements[i].matrix();
  return DenseOperator(std::move(m));
}

OperatorBasis pauli_basis(AlgebraSpec spec) {
  OperatorBasis basis;
  if (spec.d == 2) {
    const auto dim = spec.dense_dim();
    if (!dim || *dim > 16) throw Error(ErrorKind::DimensionOverflow, "Pauli basis limited to 4 qubits");
    const std::size_t count = std::size_t{1} << (2 * spec.n);
    static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::string s(spec.n, 'I');
      for (std::uint32_t site = 0; site < spec.n; ++site) {
        s[site] = kLetters[(idx >> (2 * (spec.n - 1 - site))) & 3u];
      }
      basis.elements.push_back(to_dense(PauliWord::from_letters(s)));
      basis.labels.push_back(s);
    }
    return basis;
  }
  for (const PauliWord &w : all_words(spec)) {
    basis.elements.push_back(to_dense(w));
    std::string label;
    for (std::uint32_t s = 0; s < spec.n; ++s) {
      if (s) label += '.';
      label += "X^" + std::to_string(w.x()[s]) + "Z^" + std::to_string(w.z()[s]);
    }
    basis.labels.push_back(label);
  }
  return basis;
}

OperatorBasis matrix_unit_basis(std::size_t dim) {
  if (dim * dim > 256) throw Error(ErrorKind::DimensionOverflow, "matrix-unit basis limited to dim <= 16");
  OperatorBasis basis;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      basis.elements.push_back(DenseOperator::unit(dim, i, j));
      basis.labels.push_back("E" + std::to_string(i) + "," + std::to_string(j));
    }
  }
  return basis;
}

OperatorBasis hermitian_unit_basis(std::size_t dim) {
  if (dim * dim > 256) throw Error(ErrorKind::DimensionOverflow, "Hermitian basis limited to dim <= 16");
  OperatorBasis basis;
  for (std::size_t i = 0; i < dim; ++i) {
    basis.elements.push_back(DenseOperator::unit(dim, i, i));
    basis.labels.push_back("E" + std::to_string(i) + "," + std::to_string(i));
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      const DenseOperator eij = DenseOperator::unit(dim, i, j);
      const DenseOperator eji = DenseOperator::unit(dim, j, i);
      basis.elements.push_back(eij + eji);
      basis.labels.push_back("S" + std::to_string(i) + "," + std::to_string(j));
      basis.elements.push_back(cplx(0, 1) * (eij - eji));
      basis.labels.push_back("A" + std::to_string(i) + "," + std::to_string(j));
    }
  }
  return basis;
}

OperatorBasis default_basis(const State &pi) {
  return pi.spec() ? pauli_basis(*pi.spec()) : matrix_unit_basis(pi.dim());
}

Matrix kernel_coefficients(const State &pi, const OperatorBasis &basis) {
  const Matrix g = kernels::parallel::gram(pi.density().matrix(), matrices_of(basis));
  return null_space(g, tol::kKernelRel);
}

std::vector<DenseOperator> kernel_basis(const State &pi, const OperatorBasis &basis) {
  const Matrix coeffs = kernel_coefficients(pi, basis);
  std::vector<DenseOperator> out;
  for (Eigen::Index c = 0; c < coeffs.cols(); ++c) out.push_back(basis.combine(coeffs.col(c)));
  return out;
}

std::vector<DenseOperator> kernel_basis(const State &pi) {
  return kernel_basis(pi, default_basis(pi));
}

std::vector<DenseOperator> definite_set(const State &pi, double tol) {
  const OperatorBasis basis =
      pi.spec() && pi.spec()->d == 2 ? pauli_basis(*pi.spec()) : hermitian_unit_basis(pi.dim());
  const auto n = static_cast<Eigen::Index>(basis.size());
  std::vector<double> mean(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) mean[a] = expect(pi, basis.elements[a]).real();
  // Covariance V_ab = pi(H_a o H_b) - pi(H_a) pi(H_b); Gamma = c.H has
  // variance c^T V c.
  const Matrix g = kernels::parallel::gram(pi.density().matrix(), matrices_of(basis));
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      cov(a, b) = g(a, b).real() - mean[static_cast<std::size_t>(a)] * mean[static_cast<std::size_t>(b)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (cov + cov.transpose()));
  std::vector<DenseOperator> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (es.eigenvalues()(i) < tol) {
      out.push_back(basis.combine(es.eigenvectors().col(i).cast<cplx>()));
    }
  }
  return out;
}

GnsSpace::GnsSpace(State pi, OperatorBasis basis) : pi_(std::move(pi)), basis_(std::move(basis)) {
  gram_ = kernels::parallel::gram(pi_.density().matrix(), matrices_of(basis_));
  kernel_coeffs_ = null_space(gram_, tol::kKernelRel);
  for (Eigen::Index c = 0; c < kernel_coeffs_.cols(); ++c) {
    kernel_.push_back(basis_.combine(kernel_coeffs_.col(c)));
  }
  const std::size_t target = basis_.size() - static_cast<std::size_t>(kernel_coeffs_.cols());
  const double scale = gram_.diagonal().real().maxCoeff();
  const auto n = static_cast<Eigen::Index>(basis_.size());

  // Gram-Schmidt over pivot columns under <x, y> = x* G y.
  std::vector<Vector> chosen;
  for (Eigen::Index a = 0; a < n && chosen.size() < target; ++a) {
    Vector r = Vector::Unit(n, a);
    for (const Vector &q : chosen) r -= (q.adjoint() * gram_ * r)(0, 0) * q;
    const double norm2 = (r.adjoint() * gram_ * r)(0, 0).real();
    if (norm2 <= tol::kKernelRel * scale) continue;
    chosen.push_back(r / std::sqrt(norm2));
    pivots_.push_back(static_cast<std::size_t>(a));
  }
  for (const Vector &q : chosen) quotient_.push_back(basis_.combine(q));
}

Vector GnsSpace::coordinates(const DenseOperator &a) const {
  Vector c(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) {
    c(static_cast<Eigen::Index>(i)) = correlation(pi_, quotient_[i], a);
  }
  return c;
}

cplx GnsSpace::inner(const DenseOperator &b, const DenseOperator &a) const {
  return coordinates(b).dot(coordinates(a));
}

Matrix GnsSpace::action(const DenseOperator &a) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m.col(j) = coordinates(a * quotient_[static_cast<std::size_t>(j)]);
  return m;
}

GnsSpace gns_construct(const State &pi) { return GnsSpace(pi, default_basis(pi)); }

DenseOperator pauli_exponential(double delta, double theta, const std::array<double, 3> &n) {
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (std::abs(norm - 1.0) > 1e-10) throw Error(ErrorKind::Domain, "rotation axis must be a unit vector");
  const DenseOperator sigma = n[0] * pauli_matrix(0) + n[1] * pauli_matrix(1) + n[2] * pauli_matrix(2);
  return std::polar(1.0, delta) *
         (std::cos(theta) * DenseOperator::identity(2) + cplx(0.0, std::sin(theta)) * sigma);
}

State conjugate_state(const State &pi, const DenseOperator &u) {
  if (u.dim() != pi.dim()) throw Error(ErrorKind::SpecMismatch, "unitary dimension mismatch");
  if (!u.is_unitary(tol::kUnitary)) throw Error(ErrorKind::Domain, "conjugation needs a unitary");
  return State(u * pi.density() * u.adjoint(), pi.spec());
}

DenseOperator conjugate_operator(const DenseOperator &a, const DenseOperator &u) {
  return u.adjoint() * a * u;
}

State mix_states(const std::vector<double> &weights, const std::vector<State> &states) {
  if (weights.size() != states.size() || states.empty()) {
    throw Error(ErrorKind::Domain, "need one weight per state");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorKind::Domain, "mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::Domain, "mixture weights must sum to 1");
  DenseOperator rho(states.front().dim());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != rho.dim()) throw Error(ErrorKind::SpecMismatch, "mixed states differ in dimension");
    rho += weights[i] * states[i].density();
  }
  return State(std::move(rho), states.front().spec());
}

std::array<double, 3> bloch_vector(const State &pi) {
  if (pi.dim() != 2) throw Error(ErrorKind::Domain, "Bloch vectors are defined for qubits");
  return {expect(pi, pauli_matrix(0)).real(), expect(pi, pauli_matrix(1)).real(),
          expect(pi, pauli_matrix(2)).real()};
}

State state_from_bloch(const std::array<double, 3> &r) {
  const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  if (len > 1.0 + 1e-10) throw Error(ErrorKind::Domain, "Bloch vector longer than 1");
  DenseOperator rho = DenseOperator::identity(2);
  for (int i = 0; i < 3; ++i) rho += r[static_cast<std::size_t>(i)] * pauli_matrix(i);
  return State(0.5 * rho, AlgebraSpec{2, 1});
}

State state_from_angles(double theta, double phi) {
  Vector psi(2);
  psi << std::cos(theta / 2.0), cplx(0.0, 1.0) * std::sin(theta / 2.0) * std::polar(1.0, phi);
  return State::from_vector(psi, AlgebraSpec{2, 1});
}

bool is_pure(const State &pi, double tol) {
  if (pi.dim() == 1) return true;
  const Eigen::VectorXd vals = eigenvalues_hermitian(pi.density());
  return vals(vals.size() - 2) < tol;
}

}  // namespace opalg
