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

#include "opalg/kernels.hpp"

#include <omp.h>

namespace opalg::kernels {

Vector vec(const Matrix &a) {
  Vector v(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

Matrix unvec(const Vector &v, Eigen::Index rows, Eigen::Index cols) {
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
  return a;
}

Matrix kron(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

int max_threads() { return omp_get_max_threads(); }

namespace {

// tr(rho B_a* B_b) = <B_a, B_b rho>_F
cplx gram_entry(const Matrix &a, const Matrix &b_rho) {
  return (a.conjugate().cwiseProduct(b_rho)).sum();
}

}  // namespace

namespace serial {

Matrix gram(const Matrix &rho, const std::vector<Matrix> &basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix g(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const Matrix b_rho = basis[static_cast<std::size_t>(b)] * rho;
    for (Eigen::Index a = 0; a < n; ++a) g(a, b) = gram_entry(basis[static_cast<std::size_t>(a)], b_rho);
  }
  return g;
}

Matrix superop(const std::vector<Matrix> &kraus) {
  const Matrix &k0 = kraus.front();
  Matrix s = Matrix::Zero(k0.rows() * k0.rows(), k0.cols() * k0.cols());
  for (const Matrix &k : kraus) s += kron(k, k.conjugate());
  return s;
}

Matrix choi(const std::vector<Matrix> &kraus) {
  const Matrix &k0 = kraus.front();
  const Eigen::Index n = k0.rows() * k0.cols();
  Matrix j = Matrix::Zero(n, n);
  for (const Matrix &k : kraus) {
    const Vector v = vec(k);
    j += v * v.adjoint();
  }
  return j;
}

std::vector<Matrix> sandwich(const Matrix &projector, const std::vector<Matrix> &errors) {
  const std::size_t count = errors.size();
  std::vector<Matrix> out(count * count);
  for (std::size_t k = 0; k < count; ++k) {
    const Matrix left = projector * errors[k].adjoint();
    for (std::size_t q = 0; q < count; ++q) out[k * count + q] = left * errors[q] * projector;
  }
  return out;
}

std::vector<Matrix> batch_apply(const Matrix &map, const std::vector<Matrix> &inputs) {
  std::vector<Matrix> out(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Matrix &in = inputs[i];
    out[i] = unvec(map * vec(in), in.rows(), in.cols());
  }
  return out;
}

}  // namespace serial

namespace parallel {

Matrix gram(const Matrix &rho, const std::vector<Matrix> &basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix g(n, n);
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index b = 0; b < n; ++b) {
    const Matrix b_rho = basis[static_cast<std::size_t>(b)] * rho;
    for (Eigen::Index a = 0; a < n; ++a) g(a, b) = gram_entry(basis[static_cast<std::size_t>(a)], b_rho);
  }
  return g;
}

Matrix superop(const std::vector<Matrix> &kraus) {
  // Per-term products in parallel, summed in index order.
  std::vector<Matrix> terms(kraus.size());
  const auto count = static_cast<std::ptrdiff_t>(kraus.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const Matrix &b = kraus[static_cast<std::size_t>(k)];
    terms[static_cast<std::size_t>(k)] = kron(b, b.conjugate());
  }
  Matrix s = Matrix::Zero(terms.front().rows(), terms.front().cols());
  for (const Matrix &t : terms) s += t;
  return s;
}

Matrix choi(const std::vector<Matrix> &kraus) {
  const Matrix &k0 = kraus.front();
  const Eigen::Index n = k0.rows() * k0.cols();
  std::vector<Vector> vs(kraus.size());
  for (std::size_t k = 0; k < kraus.size(); ++k) vs[k] = vec(kraus[k]);
  Matrix j(n, n);
  // Column blocks are independent; the sum over k keeps its serial order.
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < n; ++c) {
    Vector col = Vector::Zero(n);
    for (const Vector &v : vs) col += v * std::conj(v(c));
    j.col(c) = col;
  }
  return j;
}

std::vector<Matrix> sandwich(const Matrix &projector, const std::vector<Matrix> &errors) {
  const std::size_t count = errors.size();
  std::vector<Matrix> out(count * count);
  std::vector<Matrix> left(count);
  for (std::size_t k = 0; k < count; ++k) left[k] = projector * errors[k].adjoint();
  const auto total = static_cast<std::ptrdiff_t>(count * count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const auto k = static_cast<std::size_t>(idx) / count;
    const auto q = static_cast<std::size_t>(idx) % count;
    out[static_cast<std::size_t>(idx)] = left[k] * errors[q] * projector;
  }
  return out;
}

std::vector<Matrix> batch_apply(const Matrix &map, const std::vector<Matrix> &inputs) {
  std::vector<Matrix> out(inputs.size());
  const auto count = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Matrix &in = inputs[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = unvec(map * vec(in), in.rows(), in.cols());
  }
  return out;
}

}  // namespace parallel
}  // namespace opalg::kernels
