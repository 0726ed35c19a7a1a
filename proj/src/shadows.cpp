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


#include "opalg/shadows.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "opalg/composite.hpp"
#include "opalg/errors.hpp"
#include "opalg/kernels.hpp"
#include "opalg/tolerances.hpp"

namespace opalg {

namespace {

constexpr std::size_t kBlockShots = 4096;

Matrix q_matrix(const ShadowScheme &s, std::size_t u, std::size_t l) {
  return s.group[u].adjoint() * s.pvm[l] * s.group[u];
}

double real_trace_product(const Matrix &a, const Matrix &b) {
  return (a.cwiseProduct(b.transpose())).sum().real();
}

std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

ShadowScheme shadow_channel(const std::vector<Matrix> &group, const std::vector<Matrix> &pvm) {
  if (group.empty() || pvm.empty()) throw Error(ErrorKind::Domain, "shadow scheme needs a group and a PVM");
  const Eigen::Index d = group.front().rows();
  const Matrix id = Matrix::Identity(d, d);
  for (const Matrix &u : group) {
    if (u.rows() != d || u.cols() != d) throw Error(ErrorKind::SpecMismatch, "group elements differ in dimension");
    if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > tol::kUnitary)
      throw Error(ErrorKind::Domain, "group element is not unitary");
  }
  Matrix total = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < pvm.size(); ++i) {
    const Matrix &p = pvm[i];
    if (p.rows() != d || p.cols() != d) throw Error(ErrorKind::SpecMismatch, "PVM element has the wrong dimension");
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian || (p * p - p).cwiseAbs().maxCoeff() > 1e-10)
      throw Error(ErrorKind::Domain, "PVM element is not a projector");
    for (std::size_t j = 0; j < i; ++j)
      if ((p * pvm[j]).cwiseAbs().maxCoeff() > 1e-10) throw Error(ErrorKind::Domain, "PVM elements are not orthogonal");
    total += p;
  }
  if ((total - id).cwiseAbs().maxCoeff() > 1e-10) throw Error(ErrorKind::Domain, "PVM does not resolve the identity");

  ShadowScheme s;
  s.group = group;
  s.pvm = pvm;
  s.dim = static_cast<std::size_t>(d);
  std::vector<Matrix> qs;
  qs.reserve(group.size() * pvm.size());
  for (std::size_t u = 0; u < group.size(); ++u)
    for (std::size_t l = 0; l < pvm.size(); ++l) qs.push_back(q_matrix(s, u, l));
  s.m = kernels::parallel::choi(qs) / static_cast<double>(group.size());
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s.m + s.m.adjoint()));
  Vector inv = Vector::Zero(es.eigenvalues().size());
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < inv.size(); ++k)
    if (es.eigenvalues()(k) > tol::kShadowRank) {
      inv(k) = 1.0 / es.eigenvalues()(k);
      ++rank;
    }
  s.m_inv = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
  s.tomographically_complete = rank == d * d;
  return s;
}

std::vector<Matrix> computational_pvm(std::size_t dim) {
  std::vector<Matrix> out;
  const auto d = static_cast<Eigen::Index>(dim);
  for (Eigen::Index k = 0; k < d; ++k) {
    Matrix p = Matrix::Zero(d, d);
    p(k, k) = 1.0;
    out.push_back(p);
  }
  return out;
}

std::vector<Matrix> pauli_rotations() {
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix x = to_dense(PauliWord::from_letters("X")).matrix();
  const Matrix h = hadamard().matrix();
  Matrix s_dag = Matrix::Zero(2, 2);
  s_dag(0, 0) = 1.0;
  s_dag(1, 1) = cplx{0.0, -1.0};
  return {id, x, h, x * h, h * s_dag, x * h * s_dag};
}

ShadowScheme pauli_scheme(std::uint32_t qubits) {
  if (qubits == 0 || qubits > 4) throw Error(ErrorKind::Domain, "Pauli shadow scheme supports 1 to 4 qubits");
  const auto single = pauli_rotations();
  std::vector<Matrix> group{Matrix::Identity(1, 1)};
  for (std::uint32_t q = 0; q < qubits; ++q) {
    std::vector<Matrix> next;
    for (const Matrix &g : group)
      for (const Matrix &u : single) next.push_back(kernels::kron(g, u));
    group = std::move(next);
  }
  return shadow_channel(group, computational_pvm(std::size_t{1} << qubits));
}

Matrix apply_m(const ShadowScheme &s, const Matrix &rho) {
  const auto d = static_cast<Eigen::Index>(s.dim);
  return kernels::unvec(s.m * kernels::vec(rho), d, d);
}

Matrix apply_m_inv(const ShadowScheme &s, const Matrix &rho) {
  if (!s.tomographically_complete)
    throw Error(ErrorKind::IncompleteScheme, "shadow scheme is not tomographically complete");
  const auto d = static_cast<Eigen::Index>(s.dim);
  return kernels::unvec(s.m_inv * kernels::vec(rho), d, d);
}

Matrix snapshot(const ShadowScheme &s, const ShadowOutcome &o) { return q_matrix(s, o.unitary, o.outcome); }

Matrix shadow_operator(const ShadowScheme &s, const ShadowOutcome &o) { return apply_m_inv(s, snapshot(s, o)); }

std::vector<ShadowOutcome> sample_outcomes(const ShadowScheme &s, const State &pi, std::size_t shots,
                                           std::uint64_t seed) {
  if (!s.tomographically_complete)
    throw Error(ErrorKind::IncompleteScheme, "shadow scheme is not tomographically complete");
  if (shots == 0) throw Error(ErrorKind::Domain, "shot count must be at least 1");
  if (pi.dim() != s.dim) throw Error(ErrorKind::SpecMismatch, "state dimension differs from the scheme");
  const Matrix &rho = pi.density().matrix();
  const std::size_t g = s.group.size(), f = s.pvm.size();
  std::vector<double> cumulative(g * f);
  for (std::size_t u = 0; u < g; ++u) {
    double acc = 0.0;
    for (std::size_t l = 0; l < f; ++l) {
      acc += std::max(0.0, real_trace_product(q_matrix(s, u, l), rho));
      cumulative[u * f + l] = acc;
    }
    for (std::size_t l = 0; l < f; ++l) cumulative[u * f + l] /= acc;
  }
  std::vector<ShadowOutcome> out(shots);
  const auto blocks = static_cast<std::int64_t>((shots + kBlockShots - 1) / kBlockShots);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < blocks; ++b) {
    auto eng = block_engine(seed, static_cast<std::uint64_t>(b));
    std::uniform_int_distribution<std::size_t> pick(0, g - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t begin = static_cast<std::size_t>(b) * kBlockShots;
    const std::size_t end = std::min(shots, begin + kBlockShots);
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t u = pick(eng);
      const double r = unit(eng);
      const auto first = cumulative.begin() + static_cast<std::ptrdiff_t>(u * f);
      auto it = std::upper_bound(first, first + static_cast<std::ptrdiff_t>(f), r);
      const auto l = std::min<std::size_t>(static_cast<std::size_t>(it - first), f - 1);
      out[k] = ShadowOutcome{static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(l)};
    }
  }
  return out;
}

std::vector<Matrix> sample_shadows(const ShadowScheme &s, const State &pi, std::size_t shots, std::uint64_t seed) {
  const auto outcomes = sample_outcomes(s, pi, shots, seed);
  std::vector<Matrix> out(outcomes.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(outcomes.size()); ++k)
    out[static_cast<std::size_t>(k)] = shadow_operator(s, outcomes[static_cast<std::size_t>(k)]);
  return out;
}

std::vector<double> estimate(const std::vector<Matrix> &shadows, const std::vector<DenseOperator> &observables,
                             std::size_t batches) {
  if (shadows.empty() || observables.empty()) throw Error(ErrorKind::Domain, "estimate needs shadows and observables");
  if (batches == 0 || batches > shadows.size())
    throw Error(ErrorKind::Domain, "batch count must lie in [1, number of shadows]");
  std::vector<double> out;
  const std::size_t n = shadows.size();
  for (const DenseOperator &a : observables) {
    if (a.dim() != static_cast<std::size_t>(shadows.front().rows()))
      throw Error(ErrorKind::SpecMismatch, "observable dimension differs from the shadows");
    if (!a.is_hermitian()) throw Error(ErrorKind::Domain, "shadow estimates need Hermitian observables");
    std::vector<double> means;
    for (std::size_t b = 0; b < batches; ++b) {
      const std::size_t begin = b * n / batches, end = (b + 1) * n / batches;
      double acc = 0.0;
      for (std::size_t k = begin; k < end; ++k) acc += real_trace_product(shadows[k], a.matrix());
      means.push_back(acc / static_cast<double>(end - begin));
    }
    std::sort(means.begin(), means.end());
    const std::size_t mid = means.size() / 2;
    out.push_back(means.size() % 2 ? means[mid] : 0.5 * (means[mid - 1] + means[mid]));
  }
  return out;
}

Matrix exact_shadow_mean(const ShadowScheme &s, const State &pi) {
  const auto d = static_cast<Eigen::Index>(s.dim);
  Matrix acc = Matrix::Zero(d, d);
  for (std::size_t u = 0; u < s.group.size(); ++u)
    for (std::size_t l = 0; l < s.pvm.size(); ++l) {
      const ShadowOutcome o{static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(l)};
      acc += real_trace_product(snapshot(s, o), pi.density().matrix()) * shadow_operator(s, o);
    }
  return acc / static_cast<double>(s.group.size());
}

ShadowNormEstimate shadow_norm_estimate(const ShadowScheme &s, const DenseOperator &a, std::size_t samples,
                                        std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorKind::Domain, "sample count must be at least 1");
  const Matrix shadow_a = apply_m_inv(s, a.matrix());
  std::vector<double> weight, value;
  for (std::size_t u = 0; u < s.group.size(); ++u)
    for (std::size_t l = 0; l < s.pvm.size(); ++l) {
      const Matrix q = q_matrix(s, u, l);
      const double v = real_trace_product(q, shadow_a);
      value.push_back(v * v);
    }
  auto eng = block_engine(seed, 0);
  std::normal_distribution<double> gauss;
  const auto d = static_cast<Eigen::Index>(s.dim);
  ShadowNormEstimate r;
  r.samples = samples;
  r.formula = "max over sampled pure states k of (1/|G|) sum_{U,l} tr(k Q) tr(Q M^-1(A))^2, Q = U* P_l U";
  for (std::size_t t = 0; t < samples; ++t) {
    Vector psi(d);
    for (Eigen::Index i = 0; i < d; ++i) psi(i) = cplx{gauss(eng), gauss(eng)};
    psi.normalize();
    double acc = 0.0;
    std::size_t idx = 0;
    for (std::size_t u = 0; u < s.group.size(); ++u)
      for (std::size_t l = 0; l < s.pvm.size(); ++l, ++idx) {
        const Vector v = s.group[u] * psi;
        acc += (v.adjoint() * s.pvm[l] * v)(0, 0).real() * value[idx];
      }
    r.value = std::max(r.value, acc / static_cast<double>(s.group.size()));
  }
  return r;
}

ShadowDemo shadow_demo(std::uint32_t qubits, std::size_t shots, std::size_t batches, std::uint64_t seed) {
  const ShadowScheme scheme = pauli_scheme(qubits);
  const std::size_t dim = std::size_t{1} << qubits;
  ShadowDemo demo;
  demo.qubits = qubits;
  demo.shots = shots;
  demo.batches = batches;
  demo.seed = seed;
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dim));
  psi(0) = 1.0;
  if (qubits == 1) {
    demo.state_name = "zero";
  } else {
    psi(static_cast<Eigen::Index>(dim) - 1) = 1.0;
    demo.state_name = qubits == 2 ? "bell" : "ghz";
  }
  const State pi = State::from_vector(psi, AlgebraSpec{2, qubits});
  const OperatorBasis basis = pauli_basis(AlgebraSpec{2, qubits});
  const auto shadows = sample_shadows(scheme, pi, shots, seed);
  demo.labels = basis.labels;
  demo.estimates = estimate(shadows, basis.elements, batches);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    demo.exact_values.push_back(expect(pi, basis.elements[k]).real());
    demo.errors.push_back(std::abs(demo.estimates[k] - demo.exact_values[k]));
  }
  return demo;
}

}  // namespace opalg
