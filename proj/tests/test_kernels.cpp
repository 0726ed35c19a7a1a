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

#include <gtest/gtest.h>

#include "opalg/kernels.hpp"
#include "test_support.hpp"

using namespace opalg;
using namespace opalg::testing;

namespace {

std::vector<Matrix> random_matrices(std::mt19937_64 &rng, std::size_t dim, std::size_t count) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_matrix(rng, dim));
  return out;
}

}  // namespace

TEST(Kernels, GramSerialEqualsParallel) {
  std::mt19937_64 rng(1);
  const Matrix rho = random_density(rng, 4).matrix();
  const auto basis = random_matrices(rng, 4, 16);
  const Matrix s = kernels::serial::gram(rho, basis);
  EXPECT_EQ(s, kernels::parallel::gram(rho, basis));
  // Oracle: tr(rho B_a* B_b).
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      EXPECT_LT(std::abs(s(a, b) - (rho * basis[a].adjoint() * basis[b]).trace()), 1e-12);
}

TEST(Kernels, SuperopAndChoiSerialEqualsParallel) {
  std::mt19937_64 rng(2);
  const auto kraus = random_matrices(rng, 3, 7);
  EXPECT_EQ(kernels::serial::superop(kraus), kernels::parallel::superop(kraus));
  EXPECT_EQ(kernels::serial::choi(kraus), kernels::parallel::choi(kraus));
}

TEST(Kernels, SandwichSerialEqualsParallel) {
  std::mt19937_64 rng(3);
  const Matrix p = random_hermitian(rng, 4).matrix();
  const auto errors = random_matrices(rng, 4, 5);
  const auto s = kernels::serial::sandwich(p, errors);
  const auto q = kernels::parallel::sandwich(p, errors);
  ASSERT_EQ(s.size(), 25u);
  ASSERT_EQ(s.size(), q.size());
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_EQ(s[k], q[k]);
  EXPECT_LT((s[1 * 5 + 3] - p * errors[1].adjoint() * errors[3] * p).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Kernels, BatchApplySerialEqualsParallel) {
  std::mt19937_64 rng(4);
  const Matrix map = random_matrix(rng, 9);
  const auto inputs = random_matrices(rng, 3, 11);
  const auto s = kernels::serial::batch_apply(map, inputs);
  const auto q = kernels::parallel::batch_apply(map, inputs);
  for (std::size_t k = 0; k < s.size(); ++k) {
    EXPECT_EQ(s[k], q[k]);
    EXPECT_LT((kernels::vec(s[k]) - map * kernels::vec(inputs[k])).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Kernels, VecRoundTripAndKron) {
  std::mt19937_64 rng(5);
  const Matrix a = random_matrix(rng, 3);
  EXPECT_EQ(kernels::unvec(kernels::vec(a), 3, 3), a);
  EXPECT_EQ(kernels::vec(a)(1 * 3 + 2), a(1, 2));
  const Matrix k = kernels::kron(a, Matrix::Identity(2, 2));
  EXPECT_EQ(k(2 * 1 + 1, 2 * 2 + 1), a(1, 2));
  EXPECT_GE(kernels::max_threads(), 1);
}
