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

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel`; both must
// produce identical results (reductions run in a fixed order). Library code
// calls the parallel versions; tests compare the two.

#include <cstdint>
#include <vector>

#include "opalg/dense.hpp"

namespace opalg::kernels {

// gram:        G_ab = tr(rho B_a* B_b)
// superop:     sum_k B_k (x) conj(B_k), the row-stacked natural representation
// choi:        sum_k |B_k>><<B_k|
// sandwich:    P E_k* E_q P for every ordered pair, flattened as k * count + q
// batch_apply: unvec(S vec(X)) for each input X

namespace serial {
Matrix gram(const Matrix &rho, const std::vector<Matrix> &basis);
Matrix superop(const std::vector<Matrix> &kraus);
Matrix choi(const std::vector<Matrix> &kraus);
std::vector<Matrix> sandwich(const Matrix &projector, const std::vector<Matrix> &errors);
std::vector<Matrix> batch_apply(const Matrix &map, const std::vector<Matrix> &inputs);
}  // namespace serial

namespace parallel {
Matrix gram(const Matrix &rho, const std::vector<Matrix> &basis);
Matrix superop(const std::vector<Matrix> &kraus);
Matrix choi(const std::vector<Matrix> &kraus);
std::vector<Matrix> sandwich(const Matrix &projector, const std::vector<Matrix> &errors);
std::vector<Matrix> batch_apply(const Matrix &map, const std::vector<Matrix> &inputs);
}  // namespace parallel

/// Row-stacked vec: index i * cols + j holds A(i, j).
Vector vec(const Matrix &a);
Matrix unvec(const Vector &v, Eigen::Index rows, Eigen::Index cols);
/// Kronecker product, left factor most significant; shapes may be rectangular.
Matrix kron(const Matrix &a, const Matrix &b);

/// Number of OpenMP threads the parallel kernels will use.
int max_threads();

}  // namespace opalg::kernels
