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


#include "opalg/channels.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>

#include "opalg/errors.hpp"
#include "opalg/format.hpp"
#include "opalg/kernels.hpp"
#include "opalg/tolerances.hpp"

namespace opalg {

KrausSet::KrausSet(std::vector<Matrix> operators, std::vector<std::string> labels)
    : ops_(std::move(operators)), labels_(std::move(labels)) {
  if (ops_.empty()) throw Error(ErrorKind::Domain, "Kraus set is empty");
  dim_out_ = static_cast<std::size_t>(ops_.front().rows());
  dim_in_ = static_cast<std::size_t>(ops_.front().cols());
  if (dim_in_ == 0 || dim_out_ == 0) throw Error(ErrorKind::Domain, "Kraus operators must be non-empty");
  if (dim_in_ * dim_out_ > tol::kMaxDenseDim)
    throw Error(ErrorKind::DimensionOverflow, "Choi dimension exceeds " + std::to_string(tol::kMaxDenseDim));
  for (const Matrix &b : ops_) {
    if (static_cast<std::size_t>(b.rows()) != dim_out_ || static_cast<std::size_t>(b.cols()) != dim_in_)
      throw Error(ErrorKind::SpecMismatch, "Kraus operators have inconsistent shapes");
    if (!b.allFinite()) throw Error(ErrorKind::Domain, "Kraus operator has non-finite entries");
  }
  if (labels_.empty())
    for (std::size_t k = 0; k < ops_.size(); ++k) labels_.push_back(std::to_string(k));
  if (labels_.size() != ops_.size()) throw Error(ErrorKind::Domain, "label count does not match Kraus count");
}

KrausSet KrausSet::from_operators(const std::vector<DenseOperator> &operators) {
  std::vector<Matrix> ops;
  for (const auto &b : operators) ops.push_back(b.matrix());
  return KrausSet(std::move(ops));
}

namespace {

Matrix effect_sum(const KrausSet &k) {
  const auto n = static_cast<Eigen::Index>(k.dim_in());
  Matrix s = Matrix::Zero(n, n);
  for (const Matrix &b : k.operators()) s += b.adjoint() * b;
  return s;
}

void check_input(const KrausSet &k, const State &pi) {
  if (pi.dim() != k.dim_in())
    throw Error(ErrorKind::SpecMismatch, "state dimension " + std::to_string(pi.dim()) +
                                             " does not match Kraus input dimension " +
                                             std::to_string(k.dim_in()));
}

std::optional<State> normalized(const Matrix &m) {
  const double t = m.trace().real();
  if (t <= tol::kZeroProbability) return std::nullopt;
  const Matrix h = 0.5 * (m + m.adjoint()) / t;
  return State(DenseOperator(h));
}

}  // namespace

OperationCheck validate_operation(const KrausSet &k) {
  const Matrix defect = Matrix::Identity(effect_sum(k).rows(), effect_sum(k).cols()) - effect_sum(k);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (defect + defect.adjoint()), Eigen::EigenvaluesOnly);
  OperationCheck c;
  c.defect_min_eigenvalue = es.eigenvalues()(0);
  c.valid = c.defect_min_eigenvalue >= -tol::kPositive;
  c.is_channel = defect.cwiseAbs().maxCoeff() <= tol::kPositive;
  return c;
}

double trace_functional(const KrausSet &k, const State &pi) {
  check_input(k, pi);
  return expect(pi, DenseOperator(effect_sum(k))).real();
}

OperationOutput apply_operation(const KrausSet &k, const State &pi, std::optional<std::size_t> observed) {
  check_input(k, pi);
  const Matrix &rho = pi.density().matrix();
  OperationOutput out;
  if (observed) {
    if (*observed >= k.size())
      throw Error(ErrorKind::Domain, "observed outcome " + std::to_string(*observed) + " out of range");
    const Matrix &b = k.operators()[*observed];
    const Matrix branch = b * rho * b.adjoint();
    out.trace = branch.trace().real();
    if (out.trace < tol::kZeroProbability)
      throw Error(ErrorKind::ZeroProbability,
                  "outcome probability " + format_double(out.trace) + " is below 1e-12");
    out.output = branch / out.trace;
  } else {
    const auto n = static_cast<Eigen::Index>(k.dim_out());
    out.output = Matrix::Zero(n, n);
    for (const Matrix &b : k.operators()) out.output += b * rho * b.adjoint();
    out.trace = out.output.trace().real();
  }
  out.state = normalized(out.output);
  return out;
}

Matrix superop_of(const KrausSet &k) { return kernels::parallel::superop(k.operators()); }

Matrix apply_superop(const Matrix &superop, const Matrix &rho, std::size_t dim_out) {
  if (superop.cols() != rho.size())
    throw Error(ErrorKind::SpecMismatch, "superoperator does not match input dimension");
  const auto n = static_cast<Eigen::Index>(dim_out);
  return kernels::unvec(superop * kernels::vec(rho), n, n);
}

ChoiMatrix choi_of(const KrausSet &k) {
  return ChoiMatrix{kernels::parallel::choi(k.operators()), k.dim_in(), k.dim_out()};
}

ChoiMatrix choi_from_superop(const Matrix &superop, std::size_t dim_in, std::size_t dim_out) {
  const auto di = static_cast<Eigen::Index>(dim_in), dout = static_cast<Eigen::Index>(dim_out);
  if (superop.rows() != dout * dout || superop.cols() != di * di)
    throw Error(ErrorKind::SpecMismatch, "superoperator shape does not match the given dimensions");
  // J_{(a,i),(b,j)} = S_{(a,b),(i,j)}
  Matrix j(dout * di, dout * di);
  for (Eigen::Index a = 0; a < dout; ++a)
    for (Eigen::Index b = 0; b < dout; ++b)
      for (Eigen::Index i = 0; i < di; ++i)
        for (Eigen::Index l = 0; l < di; ++l) j(a * di + i, b * di + l) = superop(a * dout + b, i * di + l);
  return ChoiMatrix{j, dim_in, dim_out};
}

Matrix superop_from_choi(const ChoiMatrix &j) {
  const auto di = static_cast<Eigen::Index>(j.dim_in), dout = static_cast<Eigen::Index>(j.dim_out);
  Matrix s(dout * dout, di * di);
  for (Eigen::Index a = 0; a < dout; ++a)
    for (Eigen::Index b = 0; b < dout; ++b)
      for (Eigen::Index i = 0; i < di; ++i)
        for (Eigen::Index l = 0; l < di; ++l) s(a * dout + b, i * di + l) = j.matrix(a * di + i, b * di + l);
  return s;
}

double choi_min_eigenvalue(const ChoiMatrix &j) {
  const Matrix h = 0.5 * (j.matrix + j.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_completely_positive(const ChoiMatrix &j, double tol) { return choi_min_eigenvalue(j) >= -tol; }

KrausSet kraus_from_choi(const ChoiMatrix &j) {
  if ((j.matrix - j.matrix.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian)
    throw Error(ErrorKind::NotCompletelyPositive, "Choi matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j.matrix + j.matrix.adjoint()));
  const double lowest = es.eigenvalues()(0);
  if (lowest < -tol::kCpViolation)
    throw NotCompletelyPositiveError(lowest, "Choi matrix has negative eigenvalue " + format_double(lowest));
  std::vector<Matrix> ops;
  const auto di = static_cast<Eigen::Index>(j.dim_in), dout = static_cast<Eigen::Index>(j.dim_out);
  for (Eigen::Index k = es.eigenvalues().size(); k-- > 0;) {
    const double l = es.eigenvalues()(k);
    if (l <= tol::kKrausZero) break;
    ops.push_back(std::sqrt(l) * kernels::unvec(es.eigenvectors().col(k), dout, di));
  }
  if (ops.empty()) ops.push_back(Matrix::Zero(dout, di));
  return KrausSet(std::move(ops));
}

Dilation stinespring_dilate(const KrausSet &k) {
  if (!validate_operation(k).is_channel) throw Error(ErrorKind::Domain, "Stinespring dilation needs a channel");
  const auto env = static_cast<Eigen::Index>(k.size());
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(k.dim_out()) * env, static_cast<Eigen::Index>(k.dim_in()));
  for (Eigen::Index e = 0; e < env; ++e) {
    Matrix ket = Matrix::Zero(env, 1);
    ket(e, 0) = 1.0;
    v += kernels::kron(k.operators()[static_cast<std::size_t>(e)], ket);
  }
  return Dilation{v, k.size(), k.dim_out()};
}

Matrix apply_dilation(const Dilation &d, const Matrix &rho) {
  const FactorLayout layout({d.dim_out, d.env_dim});
  return partial_trace(DenseOperator(d.v * rho * d.v.adjoint()), layout, {0}).matrix();
}

KrausSet compose(const KrausSet &second, const KrausSet &first) {
  if (second.dim_in() != first.dim_out()) throw Error(ErrorKind::SpecMismatch, "channels do not compose");
  std::vector<Matrix> ops;
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < second.size(); ++a)
    for (std::size_t b = 0; b < first.size(); ++b) {
      ops.push_back(second.operators()[a] * first.operators()[b]);
      labels.push_back(second.labels()[a] + "." + first.labels()[b]);
    }
  return KrausSet(std::move(ops), std::move(labels));
}

KrausSet identity_channel(std::size_t dim) {
  return KrausSet({Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))});
}

KrausSet depolarizing_channel(std::size_t dim, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::Domain, "depolarizing parameter must lie in [0, 1]");
  const auto d = static_cast<Eigen::Index>(dim);
  const double dd = static_cast<double>(dim);
  // Weyl operators X^a Z^b; sum_ab W rho W* = d tr(rho) I.
  Matrix x = Matrix::Zero(d, d), z = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    x((k + d - 1) % d, k) = 1.0;
    z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / dd);
  }
  std::vector<Matrix> ops;
  std::vector<std::string> labels;
  Matrix xa = Matrix::Identity(d, d);
  for (Eigen::Index a = 0; a < d; ++a, xa = x * xa) {
    Matrix w = xa;
    for (Eigen::Index b = 0; b < d; ++b, w = w * z) {
      const double weight = (a == 0 && b == 0) ? 1.0 - p + p / (dd * dd) : p / (dd * dd);
      ops.push_back(std::sqrt(weight) * w);
      labels.push_back("W" + std::to_string(a) + std::to_string(b));
    }
  }
  return KrausSet(std::move(ops), std::move(labels));
}

KrausSet trace_channel(std::size_t dim) { return partial_trace_channel(FactorLayout({dim}), {}); }

KrausSet partial_trace_channel(const FactorLayout &layout, const std::vector<std::size_t> &keep) {
  std::vector<bool> kept(layout.sites(), false);
  for (std::size_t s : keep) {
    if (s >= layout.sites()) throw Error(ErrorKind::Domain, "site index " + std::to_string(s + 1) + " out of range");
    kept[s] = true;
  }
  std::vector<Matrix> ops{Matrix::Identity(1, 1)};
  for (std::size_t s = 0; s < layout.sites(); ++s) {
    const auto d = static_cast<Eigen::Index>(layout.local_dims()[s]);
    std::vector<Matrix> next;
    for (const Matrix &b : ops) {
      if (kept[s]) {
        next.push_back(kernels::kron(b, Matrix::Identity(d, d)));
      } else {
        for (Eigen::Index v = 0; v < d; ++v) {
          Matrix bra = Matrix::Zero(1, d);
          bra(0, v) = 1.0;
          next.push_back(kernels::kron(b, bra));
        }
      }
    }
    ops = std::move(next);
  }
  return KrausSet(std::move(ops));
}

KrausSet pvm_channel(const DenseOperator &observable) {
  const SpectralDecomposition spec = eig_hermitian(observable);
  std::vector<Matrix> ops;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    ops.push_back(spec.projectors[k].matrix());
    labels.push_back(format_double(spec.eigenvalues[k]));
  }
  return KrausSet(std::move(ops), std::move(labels));
}

Matrix transpose_superop(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix s = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

}  // namespace opalg
