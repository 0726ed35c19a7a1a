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


#include "opalg/composite.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <string>

#include "opalg/errors.hpp"
#include "opalg/kernels.hpp"
#include "opalg/tolerances.hpp"

namespace opalg {

FactorLayout::FactorLayout(std::vector<std::size_t> local_dims) : dims_(std::move(local_dims)) {
  for (std::size_t d : dims_) {
    if (d == 0) throw Error(ErrorKind::Domain, "layout site dimension must be positive");
    if (total_ > tol::kMaxDenseDim / d)
      throw Error(ErrorKind::DimensionOverflow, "layout total dimension exceeds " +
                                                    std::to_string(tol::kMaxDenseDim));
    total_ *= d;
  }
}

FactorLayout FactorLayout::qubits(std::size_t n) { return FactorLayout(std::vector<std::size_t>(n, 2)); }

std::vector<std::size_t> FactorLayout::strides() const {
  std::vector<std::size_t> s(dims_.size(), 1);
  for (std::size_t k = dims_.size(); k-- > 1;) s[k - 1] = s[k] * dims_[k];
  return s;
}

DenseOperator tensor(const DenseOperator &a, const DenseOperator &b) {
  if (a.dim() * b.dim() > tol::kMaxDenseDim)
    throw Error(ErrorKind::DimensionOverflow, "tensor product dimension exceeds " +
                                                  std::to_string(tol::kMaxDenseDim));
  return DenseOperator(kernels::kron(a.matrix(), b.matrix()));
}

DenseOperator tensor(const std::vector<DenseOperator> &factors) {
  if (factors.empty()) return DenseOperator::identity(1);
  DenseOperator out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

Vector tensor(const Vector &a, const Vector &b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

DenseOperator cnot() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return tensor(DenseOperator::unit(2, 0, 0), DenseOperator::identity(2)) +
         tensor(DenseOperator::unit(2, 1, 1), DenseOperator(x));
}

DenseOperator hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return DenseOperator(h / std::sqrt(2.0));
}

Vector bell_vector() {
  Vector zero = Vector::Zero(4);
  zero(0) = 1.0;
  return cnot() * (tensor(hadamard(), DenseOperator::identity(2)) * zero);
}

State bell_state() { return State::from_vector(bell_vector(), AlgebraSpec{2, 2}); }

namespace {

void check_dim(const DenseOperator &a, const FactorLayout &layout) {
  if (a.dim() != layout.total_dim())
    throw Error(ErrorKind::SpecMismatch, "operator dimension " + std::to_string(a.dim()) +
                                             " does not match layout dimension " +
                                             std::to_string(layout.total_dim()));
}

std::vector<std::size_t> complement(const std::vector<std::size_t> &sites, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k)
    if (!std::binary_search(sites.begin(), sites.end(), k)) out.push_back(k);
  return out;
}

std::vector<std::size_t> sorted_sites(std::vector<std::size_t> sites, const FactorLayout &layout) {
  std::sort(sites.begin(), sites.end());
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] >= layout.sites())
      throw Error(ErrorKind::Domain, "site index " + std::to_string(sites[k] + 1) + " out of range 1.." +
                                         std::to_string(layout.sites()));
    if (k > 0 && sites[k] == sites[k - 1])
      throw Error(ErrorKind::Domain, "site index " + std::to_string(sites[k] + 1) + " repeated");
  }
  return sites;
}

// Composite-basis offsets of every multi-index over `sites`.
std::vector<std::size_t> offsets(const std::vector<std::size_t> &sites, const FactorLayout &layout) {
  const auto strides = layout.strides();
  std::vector<std::size_t> out{0};
  for (std::size_t s : sites) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * layout.local_dims()[s]);
    for (std::size_t base : out)
      for (std::size_t v = 0; v < layout.local_dims()[s]; ++v) next.push_back(base + v * strides[s]);
    out = std::move(next);
  }
  return out;
}

Matrix stack_columns(const std::vector<DenseOperator> &ops, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim * dim);
  Matrix cols(n, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].dim() != dim) throw Error(ErrorKind::SpecMismatch, "operator dimension mismatch");
    cols.col(static_cast<Eigen::Index>(k)) = kernels::vec(ops[k].matrix());
  }
  return cols;
}

std::vector<DenseOperator> unstack(const Matrix &cols, std::size_t dim) {
  std::vector<DenseOperator> out;
  const auto d = static_cast<Eigen::Index>(dim);
  for (Eigen::Index c = 0; c < cols.cols(); ++c) out.emplace_back(kernels::unvec(cols.col(c), d, d));
  return out;
}

Matrix orthonormal_columns(const Matrix &cols) {
  if (cols.cols() == 0) return cols;
  Eigen::BDCSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const auto rank = static_cast<Eigen::Index>(numerical_rank(cols, tol::kKernelRel));
  return svd.matrixU().leftCols(rank);
}

}  // namespace

DenseOperator partial_trace(const DenseOperator &a, const FactorLayout &layout,
                            const std::vector<std::size_t> &keep) {
  check_dim(a, layout);
  const auto kept = sorted_sites(keep, layout);
  const auto kept_off = offsets(kept, layout);
  const auto traced_off = offsets(complement(kept, layout.sites()), layout);
  const std::size_t n = kept_off.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const Matrix &m = a.matrix();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      cplx acc = 0.0;
      for (std::size_t t : traced_off)
        acc += m(static_cast<Eigen::Index>(kept_off[r] + t), static_cast<Eigen::Index>(kept_off[c] + t));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  return DenseOperator(out);
}

DenseOperator place(const DenseOperator &a, const std::vector<std::size_t> &sites,
                    const DenseOperator &b, const FactorLayout &layout) {
  const auto in = sorted_sites(sites, layout);
  const auto in_off = offsets(in, layout);
  const auto out_off = offsets(complement(in, layout.sites()), layout);
  if (a.dim() != in_off.size() || b.dim() != out_off.size())
    throw Error(ErrorKind::SpecMismatch, "factor dimensions do not match the layout");
  Matrix out(static_cast<Eigen::Index>(layout.total_dim()), static_cast<Eigen::Index>(layout.total_dim()));
  for (std::size_t i = 0; i < in_off.size(); ++i)
    for (std::size_t j = 0; j < in_off.size(); ++j)
      for (std::size_t r = 0; r < out_off.size(); ++r)
        for (std::size_t c = 0; c < out_off.size(); ++c)
          out(static_cast<Eigen::Index>(in_off[i] + out_off[r]),
              static_cast<Eigen::Index>(in_off[j] + out_off[c])) = a(i, j) * b(r, c);
  return DenseOperator(out);
}

Vector vectorize(const DenseOperator &a) { return kernels::vec(a.matrix()); }

DenseOperator devectorize(const Vector &v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size())
    throw Error(ErrorKind::Domain, "vector length " + std::to_string(v.size()) + " is not a square");
  return DenseOperator(kernels::unvec(v, d, d));
}

std::vector<DenseOperator> commutant(const std::vector<DenseOperator> &generators, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  std::vector<Matrix> gens;
  for (const auto &g : generators) {
    if (g.dim() != dim) throw Error(ErrorKind::SpecMismatch, "generator dimension mismatch");
    gens.push_back(g.matrix());
    if (!g.is_hermitian()) gens.push_back(g.matrix().adjoint());
  }
  if (gens.empty()) return unstack(Matrix::Identity(n * n, n * n), dim);
  // vec(AM - MA) = (I (x) M^T - M (x) I) vec(A)
  const Matrix id = Matrix::Identity(n, n);
  Matrix stacked(static_cast<Eigen::Index>(gens.size()) * n * n, n * n);
  for (std::size_t k = 0; k < gens.size(); ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) =
        kernels::kron(id, gens[k].transpose()) - kernels::kron(gens[k], id);
  return unstack(null_space(stacked, tol::kKernelRel), dim);
}

std::vector<DenseOperator> span_basis(const std::vector<DenseOperator> &ops, std::size_t dim) {
  return unstack(orthonormal_columns(stack_columns(ops, dim)), dim);
}

std::vector<DenseOperator> generated_algebra(const std::vector<DenseOperator> &generators,
                                             std::size_t dim) {
  std::vector<DenseOperator> seed{DenseOperator::identity(dim)};
  for (const auto &g : generators) {
    seed.push_back(g);
    seed.push_back(g.adjoint());
  }
  Matrix basis = orthonormal_columns(stack_columns(seed, dim));
  const auto d = static_cast<Eigen::Index>(dim);
  for (Eigen::Index done = 0; basis.cols() != done && basis.cols() < d * d * d * d;) {
    done = basis.cols();
    std::vector<DenseOperator> ops = unstack(basis, dim);
    std::vector<DenseOperator> grown = ops;
    for (const auto &a : ops)
      for (const auto &b : ops) {
        const Vector p = kernels::vec((a * b).matrix());
        const Vector residual = p - basis * (basis.adjoint() * p);
        if (residual.norm() > 1e-9 * std::max(1.0, p.norm())) grown.push_back(a * b);
      }
    basis = orthonormal_columns(stack_columns(grown, dim));
  }
  return unstack(basis, dim);
}

FactorReport factor_check(const std::vector<DenseOperator> &subalgebra, std::size_t dim) {
  FactorReport r;
  const auto n_basis = span_basis(subalgebra, dim);
  const auto n_prime = commutant(subalgebra, dim);
  std::vector<DenseOperator> both = n_basis;
  both.insert(both.end(), n_prime.begin(), n_prime.end());
  const std::size_t union_dim = span_basis(both, dim).size();
  r.algebra_dim = n_basis.size();
  r.commutant_dim = n_prime.size();
  r.intersection_dim = r.algebra_dim + r.commutant_dim - union_dim;
  r.join_dim = generated_algebra(both, dim).size();
  r.is_masa = r.algebra_dim == r.commutant_dim && r.intersection_dim == r.algebra_dim;
  r.join_is_full = r.join_dim == dim * dim;
  r.intersection_trivial = r.intersection_dim == 1;
  return r;
}

DenseOperator product_of_marginals(const State &pi, const FactorLayout &layout) {
  std::vector<DenseOperator> factors;
  for (std::size_t k = 0; k < layout.sites(); ++k)
    factors.push_back(partial_trace(pi.density(), layout, {k}));
  return tensor(factors);
}

bool is_product_state(const State &pi, const FactorLayout &layout, double tol) {
  return pi.density().distance(product_of_marginals(pi, layout)) <= tol;
}

}  // namespace opalg
