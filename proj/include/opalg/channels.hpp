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
#include <string>
#include <vector>

#include "opalg/composite.hpp"
#include "opalg/dense.hpp"
#include "opalg/states.hpp"

namespace opalg {

/// Operation rho -> sum_k B_k rho B_k*; operators map C^dim_in to C^dim_out.
class KrausSet {
 public:
  KrausSet(std::vector<Matrix> operators, std::vector<std::string> labels = {});
  static KrausSet from_operators(const std::vector<DenseOperator> &operators);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  std::size_t size() const { return ops_.size(); }
  const std::vector<Matrix> &operators() const { return ops_; }
  const std::vector<std::string> &labels() const { return labels_; }

 private:
  std::size_t dim_in_ = 0;
  std::size_t dim_out_ = 0;
  std::vector<Matrix> ops_;
  std::vector<std::string> labels_;
};

struct OperationCheck {
  bool valid = false;
  bool is_channel = false;
  /// Smallest eigenvalue of I - sum_k B_k* B_k.
  double defect_min_eigenvalue = 0.0;
};

OperationCheck validate_operation(const KrausSet &k);

/// tau(pi) = sum_k pi(B_k* B_k).
double trace_functional(const KrausSet &k, const State &pi);

struct OperationOutput {
  /// Unobserved: sum_k B rho B*. Observed: p_k^-1 B_k rho B_k*.
  Matrix output;
  /// Unobserved: tau. Observed: p_k.
  double trace = 0.0;
  /// Normalized output when its trace exceeds 1e-12.
  std::optional<State> state;
};

OperationOutput apply_operation(const KrausSet &k, const State &pi,
                                std::optional<std::size_t> observed = std::nullopt);

/// Matrix of the map on row-stacked vectors: sum_k B_k (x) conj(B_k).
Matrix superop_of(const KrausSet &k);
Matrix apply_superop(const Matrix &superop, const Matrix &rho, std::size_t dim_out);

struct ChoiMatrix {
  Matrix matrix;
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
};

/// J = sum_ij E(E_ij) (x) E_ij, output factor first.
ChoiMatrix choi_of(const KrausSet &k);
ChoiMatrix choi_from_superop(const Matrix &superop, std::size_t dim_in, std::size_t dim_out);
Matrix superop_from_choi(const ChoiMatrix &j);

double choi_min_eigenvalue(const ChoiMatrix &j);
bool is_completely_positive(const ChoiMatrix &j, double tol = 1e-9);

/// Scaled eigenvectors of J; eigenvalues in [-1e-9, 1e-12] are dropped.
KrausSet kraus_from_choi(const ChoiMatrix &j);

struct Dilation {
  /// V = sum_k B_k (x) |k>, environment last.
  Matrix v;
  std::size_t env_dim = 0;
  std::size_t dim_out = 0;
};

Dilation stinespring_dilate(const KrausSet &k);
/// tr_env(V rho V*).
Matrix apply_dilation(const Dilation &d, const Matrix &rho);

/// Kraus set of `second` after `first`.
KrausSet compose(const KrausSet &second, const KrausSet &first);

KrausSet identity_channel(std::size_t dim);
/// rho -> (1 - p) rho + p tr(rho) I / dim, for p in [0, 1].
KrausSet depolarizing_channel(std::size_t dim, double p);
KrausSet trace_channel(std::size_t dim);
KrausSet partial_trace_channel(const FactorLayout &layout, const std::vector<std::size_t> &keep);
/// Spectral projectors of a Hermitian observable.
KrausSet pvm_channel(const DenseOperator &observable);
/// Transpose map on dim x dim matrices (not completely positive).
Matrix transpose_superop(std::size_t dim);

}  // namespace opalg
