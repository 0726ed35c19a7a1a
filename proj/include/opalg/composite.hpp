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

#include <cstddef>
#include <vector>

#include "opalg/dense.hpp"
#include "opalg/states.hpp"

namespace opalg {

/// Per-site dimensions of a tensor-product space; site 0 is the leftmost
/// (most significant) factor.
class FactorLayout {
 public:
  explicit FactorLayout(std::vector<std::size_t> local_dims);
  static FactorLayout qubits(std::size_t n);

  const std::vector<std::size_t> &local_dims() const { return dims_; }
  std::size_t sites() const { return dims_.size(); }
  std::size_t total_dim() const { return total_; }
  /// Index stride of each site in the composite basis.
  std::vector<std::size_t> strides() const;

  bool operator==(const FactorLayout &) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

DenseOperator tensor(const DenseOperator &a, const DenseOperator &b);
DenseOperator tensor(const std::vector<DenseOperator> &factors);
Vector tensor(const Vector &a, const Vector &b);

DenseOperator cnot();
DenseOperator hadamard();
/// CNOT (H x I)|00>.
Vector bell_vector();
State bell_state();

/// Traces out every site not in `keep` (0-based); kept sites stay in layout order.
DenseOperator partial_trace(const DenseOperator &a, const FactorLayout &layout,
                            const std::vector<std::size_t> &keep);

/// Operator acting as `a` on `sites` and as `b` on the remaining sites.
DenseOperator place(const DenseOperator &a, const std::vector<std::size_t> &sites,
                    const DenseOperator &b, const FactorLayout &layout);

/// |A>> = sum_ij A_ij |i> (x) |j>.
Vector vectorize(const DenseOperator &a);
DenseOperator devectorize(const Vector &v);

/// Frobenius-orthonormal basis of {A : [A, M] = 0 for all M and M*}.
std::vector<DenseOperator> commutant(const std::vector<DenseOperator> &generators, std::size_t dim);

/// Frobenius-orthonormal basis of the linear span.
std::vector<DenseOperator> span_basis(const std::vector<DenseOperator> &ops, std::size_t dim);

/// Unital *-algebra generated by `generators`, as an orthonormal basis.
std::vector<DenseOperator> generated_algebra(const std::vector<DenseOperator> &generators,
                                             std::size_t dim);

struct FactorReport {
  std::size_t algebra_dim = 0;
  std::size_t commutant_dim = 0;
  std::size_t join_dim = 0;
  std::size_t intersection_dim = 0;
  bool is_masa = false;
  bool join_is_full = false;
  bool intersection_trivial = false;
};

FactorReport factor_check(const std::vector<DenseOperator> &subalgebra, std::size_t dim);

/// Tensor product of the single-site reduced densities.
DenseOperator product_of_marginals(const State &pi, const FactorLayout &layout);
bool is_product_state(const State &pi, const FactorLayout &layout, double tol = 1e-10);

}  // namespace opalg
