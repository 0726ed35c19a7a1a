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


#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "opalg/kernels.hpp"
#include "opalg/pauli_algebra.hpp"
#include "opalg/stabilizer_qec.hpp"

namespace {

using opalg::Matrix;
namespace kernels = opalg::kernels;

Matrix random_matrix(std::mt19937_64 &rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

std::vector<Matrix> random_set(Eigen::Index dim, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_matrix(rng, dim));
  return out;
}

Matrix density(Eigen::Index dim) {
  std::mt19937_64 rng(3);
  const Matrix a = random_matrix(rng, dim);
  const Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

template <Matrix (*Kernel)(const Matrix &, const std::vector<Matrix> &)>
void BM_Gram(benchmark::State &state) {
  const auto dim = static_cast<Eigen::Index>(state.range(0));
  const Matrix rho = density(dim);
  const auto basis = random_set(dim, static_cast<std::size_t>(dim * dim), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(rho, basis));
}

template <Matrix (*Kernel)(const std::vector<Matrix> &)>
void BM_KrausMatrix(benchmark::State &state) {
  const auto dim = static_cast<Eigen::Index>(state.range(0));
  const auto kraus = random_set(dim, 8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(kraus));
}

template <std::vector<Matrix> (*Kernel)(const Matrix &, const std::vector<Matrix> &)>
void BM_FiveQubitSandwich(benchmark::State &state) {
  const opalg::StabilizerCode code = opalg::build_code("five_qubit");
  std::vector<Matrix> errors;
  for (const auto &e : opalg::dense_errors(opalg::weight_one_errors(code.group.spec()))) errors.push_back(e.matrix());
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(code.projector.matrix(), errors));
}

template <std::vector<Matrix> (*Kernel)(const Matrix &, const std::vector<Matrix> &)>
void BM_BatchApply(benchmark::State &state) {
  const auto dim = static_cast<Eigen::Index>(state.range(0));
  const Matrix map = kernels::serial::superop(random_set(dim, 4, 5));
  const auto inputs = random_set(dim, 64, 6);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(map, inputs));
}

BENCHMARK(BM_Gram<kernels::serial::gram>)->Name("gram/serial")->Arg(4)->Arg(8);
BENCHMARK(BM_Gram<kernels::parallel::gram>)->Name("gram/parallel")->Arg(4)->Arg(8);
BENCHMARK(BM_KrausMatrix<kernels::serial::superop>)->Name("superop/serial")->Arg(8)->Arg(16);
BENCHMARK(BM_KrausMatrix<kernels::parallel::superop>)->Name("superop/parallel")->Arg(8)->Arg(16);
BENCHMARK(BM_KrausMatrix<kernels::serial::choi>)->Name("choi/serial")->Arg(8)->Arg(16);
BENCHMARK(BM_KrausMatrix<kernels::parallel::choi>)->Name("choi/parallel")->Arg(8)->Arg(16);
BENCHMARK(BM_FiveQubitSandwich<kernels::serial::sandwich>)->Name("sandwich_five_qubit/serial");
BENCHMARK(BM_FiveQubitSandwich<kernels::parallel::sandwich>)->Name("sandwich_five_qubit/parallel");
BENCHMARK(BM_BatchApply<kernels::serial::batch_apply>)->Name("batch_apply/serial")->Arg(4)->Arg(8);
BENCHMARK(BM_BatchApply<kernels::parallel::batch_apply>)->Name("batch_apply/parallel")->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
