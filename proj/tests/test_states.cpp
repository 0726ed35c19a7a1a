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

#include <cmath>
#include <numbers>

#include "opalg/errors.hpp"
#include "opalg/states.hpp"
#include "test_support.hpp"

using namespace opalg;
using namespace opalg::testing;

namespace {

DenseOperator pauli(const char *s) { return to_dense(PauliWord::from_letters(s)); }

const cplx kI{0.0, 1.0};

// Rank of the union of two operator families, via vectorization.
Eigen::Index joint_rank(const std::vector<DenseOperator> &a, const std::vector<DenseOperator> &b) {
  const auto dim = static_cast<Eigen::Index>(a.empty() ? b.front().dim() : a.front().dim());
  Matrix cols(dim * dim, static_cast<Eigen::Index>(a.size() + b.size()));
  Eigen::Index c = 0;
  for (const auto *fam : {&a, &b})
    for (const auto &op : *fam) cols.col(c++) = Eigen::Map<const Vector>(op.matrix().data(), dim * dim);
  return static_cast<Eigen::Index>(numerical_rank(cols, 1e-9));
}

State random_state(std::mt19937_64 &rng, std::size_t dim, std::size_t rank = 0) {
  return State(random_density(rng, dim, rank));
}

}  // namespace

TEST(Expect, FiducialZ) {
  const State pi0 = State::fiducial(0);
  EXPECT_NEAR(expect(pi0, pauli("Z")).real(), 1.0, 1e-15);
  EXPECT_NEAR(variance(pi0, pauli("Z")), 0.0, 1e-15);
  EXPECT_NEAR(State::fiducial(1)(OperatorSum(PauliWord::from_letters("Z"))).real(), -1.0, 1e-15);
}

TEST(Expect, CoinVariance) {
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    const State pi = State::coin(p);
    EXPECT_NEAR(expect(pi, pauli("Z")).real(), 2 * p - 1, 1e-15);
    EXPECT_NEAR(variance(pi, pauli("Z")), 4 * p * (1 - p), 1e-12) << p;
  }
  EXPECT_NEAR(variance(State::coin(0.25), pauli("Z")), 0.75, 1e-12);
}

TEST(Expect, CauchySchwarz) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t dim = 2 + t % 3;
    const State pi = random_state(rng, dim, 1 + t % dim);
    const DenseOperator a = random_operator(rng, dim), b = random_operator(rng, dim);
    const double lhs = std::norm(correlation(pi, b, a));
    const double rhs = std::pow(seminorm(pi, a), 2) * std::pow(seminorm(pi, b), 2);
    EXPECT_LE(lhs, rhs * (1 + 1e-12) + 1e-12);
  }
}

TEST(Expect, TriangleInequality) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 100; ++t) {
    const State pi = random_state(rng, 3, 1 + t % 3);
    const DenseOperator a = random_operator(rng, 3), b = random_operator(rng, 3);
    EXPECT_LE(seminorm(pi, a + b), seminorm(pi, a) + seminorm(pi, b) + 1e-12);
  }
}

TEST(Expect, DimensionMismatchAndNonSelfAdjoint) {
  EXPECT_THROW(expect(State::fiducial(0), DenseOperator::identity(3)), Error);
  EXPECT_THROW(variance(State::fiducial(0), DenseOperator::unit(2, 0, 1)), Error);
}

TEST(Kernel, FiducialZeroPauli) {
  const std::vector<DenseOperator> k = kernel_basis(State::fiducial(0));
  ASSERT_EQ(k.size(), 2u);
  const std::vector<DenseOperator> expected = {
      0.5 * (pauli("I") - pauli("Z")), 0.5 * (pauli("X") + kI * pauli("Y"))};
  EXPECT_EQ(joint_rank(k, expected), 2);
  for (const auto &theta : k) EXPECT_LT(std::abs(correlation(State::fiducial(0), theta, theta)), 1e-10);
}

TEST(Kernel, MaximallyMixedIsTrivial) {
  EXPECT_TRUE(kernel_basis(State::maximally_mixed(2, AlgebraSpec{2, 1})).empty());
  EXPECT_TRUE(kernel_basis(State::maximally_mixed(3)).empty());
}

TEST(Kernel, LeftIdealClosure) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    const State pi = random_state(rng, 3, 1 + t % 2);
    for (const DenseOperator &theta : kernel_basis(pi)) {
      const DenseOperator a = random_operator(rng, 3);
      const DenseOperator at = a * theta;
      EXPECT_LT(std::abs(correlation(pi, at, at)), 1e-10);
    }
  }
}

TEST(DefiniteSet, FiducialAndMixed) {
  const auto d0 = definite_set(State::fiducial(0));
  ASSERT_EQ(d0.size(), 2u);
  EXPECT_EQ(joint_rank(d0, {pauli("I"), pauli("Z")}), 2);
  const auto dm = definite_set(State::maximally_mixed(2, AlgebraSpec{2, 1}));
  ASSERT_EQ(dm.size(), 1u);
  EXPECT_EQ(joint_rank(dm, {pauli("I")}), 1);
  for (const auto &g : d0) EXPECT_TRUE(g.is_hermitian());
}

TEST(DefiniteSet, JordanClosureAndMultiplicativity) {
  std::mt19937_64 rng(43);
  const State pi = State::from_vector(random_unit_vector(rng, 4), AlgebraSpec{2, 2});
  const auto defs = definite_set(pi);
  EXPECT_EQ(defs.size(), 10u);  // 1 + 3^2 real dimensions
  for (const auto &g : defs) {
    for (const auto &l : defs) {
      const DenseOperator j = jordan(g, l);
      EXPECT_LT(variance(pi, j), 1e-10);
      EXPECT_NEAR(expect(pi, j).real(), expect(pi, g).real() * expect(pi, l).real(), 1e-9);
    }
  }
}

TEST(Gns, FiducialZeroIsAQubit) {
  const GnsSpace gns = gns_construct(State::fiducial(0));
  ASSERT_EQ(gns.dim(), 2u);
  ASSERT_EQ(gns.pivots().size(), 2u);
  EXPECT_EQ(gns.basis().labels[gns.pivots()[0]], "I");
  EXPECT_EQ(gns.basis().labels[gns.pivots()[1]], "X");
  Matrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  EXPECT_LT((gns.action(pauli("X")) - x).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((gns.action(pauli("Z")) - z).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_EQ(gns.kernel().size(), 2u);
}

TEST(Gns, MixedCoinIsFourDimensional) {
  for (double p : {0.1, 0.25, 0.5, 0.9}) EXPECT_EQ(gns_construct(State::coin(p)).dim(), 4u);
  EXPECT_EQ(gns_construct(State::coin(1.0)).dim(), 2u);
}

TEST(Gns, LeftActionIsMultiplicative) {
  std::mt19937_64 rng(47);
  const State pi = random_state(rng, 2, 1);
  const GnsSpace gns = gns_construct(pi);
  for (int t = 0; t < 100; ++t) {
    const DenseOperator a = random_operator(rng, 2), b = random_operator(rng, 2);
    EXPECT_LT((gns.action(a * b) - gns.action(a) * gns.action(b)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Gns, QuotientOrthonormalAndInnerProductConsistent) {
  std::mt19937_64 rng(53);
  for (std::size_t rank : {1u, 2u, 3u}) {
    const State pi = random_state(rng, 3, rank);
    const GnsSpace gns = gns_construct(pi);
    EXPECT_EQ(gns.dim(), 3 * rank);
    for (std::size_t i = 0; i < gns.dim(); ++i)
      for (std::size_t j = 0; j < gns.dim(); ++j)
        EXPECT_NEAR(std::abs(correlation(pi, gns.quotient_basis()[i], gns.quotient_basis()[j]) -
                             (i == j ? 1.0 : 0.0)),
                    0.0, 1e-9);
    for (int t = 0; t < 20; ++t) {
      const DenseOperator a = random_operator(rng, 3), b = random_operator(rng, 3);
      EXPECT_LT(std::abs(gns.inner(b, a) - correlation(pi, b, a)), 1e-9);
    }
    for (const auto &theta : gns.kernel()) EXPECT_LT(std::abs(correlation(pi, theta, theta)), 1e-10);
  }
}

TEST(PauliExponential, ZeroAngle) {
  const DenseOperator u = pauli_exponential(0.3, 0.0, {0, 0, 1});
  EXPECT_LT(u.distance(std::polar(1.0, 0.3) * DenseOperator::identity(2)), 1e-15);
  EXPECT_TRUE(pauli_exponential(0.1, 1.2, {0.6, 0, 0.8}).is_unitary(1e-12));
  EXPECT_THROW(pauli_exponential(0, 1, {1, 1, 0}), Error);
}

TEST(PauliExponential, RotatesZ) {
  for (double theta = 0.05; theta < 3.0; theta += 0.29) {
    for (double phi = 0.0; phi < 6.2; phi += 0.7) {
      const std::array<double, 3> n = {std::cos(phi), std::sin(phi), 0.0};
      const DenseOperator u = pauli_exponential(0.0, -theta, n);
      const DenseOperator rotated = conjugate_operator(pauli("Z"), u);
      const double s = std::sin(2 * theta);
      const std::array<double, 3> np = {-n[1] * s, n[0] * s, std::cos(2 * theta)};
      const DenseOperator expected = np[0] * pauli("X") + np[1] * pauli("Y") + np[2] * pauli("Z");
      EXPECT_LT(rotated.distance(expected), 1e-10);
    }
  }
}

TEST(PauliExponential, HalfTurnFlipsZ) {
  const DenseOperator u = pauli_exponential(0.0, std::numbers::pi / 2, {1, 0, 0});
  EXPECT_LT(conjugate_operator(pauli("Z"), u).distance(-1.0 * pauli("Z")), 1e-12);
}

TEST(ConjugateState, IdentityAndFlip) {
  const State pi0 = State::fiducial(0);
  EXPECT_LT(conjugate_state(pi0, DenseOperator::identity(2)).density().distance(pi0.density()), 1e-15);
  EXPECT_LT(conjugate_state(pi0, pauli("X")).density().distance(State::fiducial(1).density()), 1e-15);
  EXPECT_THROW(conjugate_state(pi0, 2.0 * pauli("X")), Error);
}

TEST(ConjugateState, CompositionLaw) {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 20; ++t) {
    const State pi = random_state(rng, 3);
    const DenseOperator u = random_unitary(rng, 3), v = random_unitary(rng, 3);
    const State lhs = conjugate_state(pi, u * v);
    const State rhs = conjugate_state(conjugate_state(pi, v), u);
    EXPECT_LT(lhs.density().distance(rhs.density()), 1e-12);
    // Pulled-back functional: C^U[pi](A) = pi(U* A U).
    const DenseOperator a = random_operator(rng, 3);
    EXPECT_LT(std::abs(expect(conjugate_state(pi, u), a) - expect(pi, conjugate_operator(a, u))), 1e-12);
  }
}

TEST(Mix, HalfHalfIsMaximallyMixed) {
  const State mixed = mix_states({0.5, 0.5}, {State::fiducial(0), State::fiducial(1)});
  EXPECT_LT(mixed.density().distance(0.5 * DenseOperator::identity(2)), 1e-15);
  const auto r = bloch_vector(mixed);
  for (double c : r) EXPECT_NEAR(c, 0.0, 1e-15);
  EXPECT_LT(mix_states({1.0, 0.0}, {State::fiducial(1), State::fiducial(0)}).density().distance(
                State::fiducial(1).density()),
            1e-15);
}

TEST(Mix, BlochVectorIsConvex) {
  std::mt19937_64 rng(61);
  const State a = random_state(rng, 2), b = random_state(rng, 2);
  const auto ra = bloch_vector(a), rb = bloch_vector(b);
  const auto rm = bloch_vector(mix_states({0.3, 0.7}, {a, b}));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(rm[i], 0.3 * ra[i] + 0.7 * rb[i], 1e-12);
}

TEST(Mix, LawOfTotalVariance) {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 20; ++t) {
    const State a = random_state(rng, 3), b = random_state(rng, 3);
    const DenseOperator g = random_hermitian(rng, 3);
    const double p0 = 0.1 + 0.04 * t, p1 = 1.0 - p0;
    const double lhs = variance(mix_states({p0, p1}, {a, b}), g);
    const double delta = expect(a, g).real() - expect(b, g).real();
    EXPECT_NEAR(lhs, p0 * variance(a, g) + p1 * variance(b, g) + p0 * p1 * delta * delta, 1e-12);
  }
}

TEST(Mix, InvalidWeights) {
  const std::vector<State> s = {State::fiducial(0), State::fiducial(1)};
  EXPECT_THROW(mix_states({0.7, 0.7}, s), Error);
  EXPECT_THROW(mix_states({1.5, -0.5}, s), Error);
  EXPECT_THROW(mix_states({1.0}, s), Error);
}

TEST(Bloch, NorthPoleAndRoundTrip) {
  const auto r = bloch_vector(State::fiducial(0));
  EXPECT_NEAR(r[2], 1.0, 1e-15);
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const State s = random_state(rng, 2);
    const auto v = bloch_vector(s);
    EXPECT_LT(state_from_bloch(v).density().distance(s.density()), 1e-12);
  }
  EXPECT_LT(state_from_bloch({0, 0, 0}).density().distance(0.5 * DenseOperator::identity(2)), 1e-15);
  EXPECT_THROW(state_from_bloch({1.0, 0.1, 0.0}), Error);
}

TEST(Bloch, AnglesUseShiftedAzimuth) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const double theta = std::numbers::pi * u(rng), phi = 2 * std::numbers::pi * u(rng);
    // Expectations straight from the amplitudes.
    const cplx a = std::cos(theta / 2);
    const cplx b = kI * std::sin(theta / 2) * std::polar(1.0, phi);
    const std::array<double, 3> direct = {2 * (std::conj(a) * b).real(), 2 * (std::conj(a) * b).imag(),
                                          std::norm(a) - std::norm(b)};
    const auto got = bloch_vector(state_from_angles(theta, phi));
    const std::array<double, 3> formula = {std::sin(theta) * std::cos(phi + std::numbers::pi / 2),
                                           std::sin(theta) * std::sin(phi + std::numbers::pi / 2),
                                           std::cos(theta)};
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(got[i], direct[i], 1e-12);
      EXPECT_NEAR(got[i], formula[i], 1e-12);
    }
  }
}

TEST(Purity, Examples) {
  EXPECT_TRUE(is_pure(State::fiducial(0)));
  EXPECT_FALSE(is_pure(State::coin(0.3)));
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const State s = state_from_angles(std::numbers::pi * u(rng), 2 * std::numbers::pi * u(rng));
    EXPECT_TRUE(is_pure(s));
    EXPECT_EQ(definite_set(s).size(), 2u);
    const auto r = bloch_vector(s);
    EXPECT_NEAR(r[0] * r[0] + r[1] * r[1] + r[2] * r[2], 1.0, 1e-12);
  }
  EXPECT_EQ(definite_set(State::coin(0.3)).size(), 1u);
}

TEST(Sharpness, ExpectationsFactorize) {
  std::mt19937_64 rng(83);
  const State pi = State::from_vector(random_unit_vector(rng, 3));
  for (const DenseOperator &g : definite_set(pi)) {
    ASSERT_LT(variance(pi, g), 1e-12);
    for (int t = 0; t < 100; ++t) {
      const DenseOperator a = random_operator(rng, 3);
      EXPECT_LT(std::abs(expect(pi, g * a) - expect(pi, g) * expect(pi, a)), 1e-8);
    }
  }
}

TEST(Rigidity, SharedDefiniteElementPinsPureQubitState) {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 20; ++t) {
    const State a = State::from_vector(random_unit_vector(rng, 2), AlgebraSpec{2, 1});
    // Its non-identity definite element is sigma(r); build a second pure
    // state sharing it with the same expectation value.
    const auto r = bloch_vector(a);
    const State b = state_from_bloch(r);
    const DenseOperator gamma = r[0] * pauli("X") + r[1] * pauli("Y") + r[2] * pauli("Z");
    ASSERT_LT(variance(b, gamma), 1e-10);
    ASSERT_NEAR(expect(a, gamma).real(), expect(b, gamma).real(), 1e-12);
    EXPECT_LT(a.density().distance(b.density()), 1e-8);
    // The opposite pole shares gamma but with the other eigenvalue.
    const State c = state_from_bloch({-r[0], -r[1], -r[2]});
    EXPECT_GT(std::abs(expect(a, gamma) - expect(c, gamma)), 1.0);
  }
}

TEST(State, RejectsInvalidDensities) {
  EXPECT_THROW(State(DenseOperator::identity(2)), Error);
  EXPECT_THROW(State(pauli("Z")), Error);
  Matrix m(2, 2);
  m << 1.5, 0, 0, -0.5;
  EXPECT_THROW(State{DenseOperator(m)}, Error);
  EXPECT_THROW(State(DenseOperator::unit(2, 0, 0), AlgebraSpec{2, 2}), Error);
}
