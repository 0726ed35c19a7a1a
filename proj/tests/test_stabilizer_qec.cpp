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

#include <functional>
#include <numeric>

#include "opalg/composite.hpp"
#include "opalg/errors.hpp"
#include "opalg/stabilizer_qec.hpp"
#include "test_support.hpp"

using namespace opalg;
using namespace opalg::testing;

namespace {

PauliWord w(const char *s) { return PauliWord::from_letters(s); }

ErrorKind kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

std::vector<int> signs(const std::vector<std::uint32_t> &exps) {
  std::vector<int> out;
  for (auto k : exps) out.push_back(k == 0 ? 1 : (k == 2 ? -1 : 0));
  return out;
}

// Random density supported on the code space.
DenseOperator random_code_density(std::mt19937_64 &rng, const StabilizerCode &code) {
  const Matrix &p = code.projector.matrix();
  const Matrix a = p * random_density(rng, p.rows()).matrix() * p;
  return DenseOperator(a / a.trace());
}

}  // namespace

TEST(Group, OrdersAndErrors) {
  EXPECT_EQ(group_generate({w("YY")}).order(), 2u);
  EXPECT_EQ(build_code("five_qubit").group.order(), 16u);
  EXPECT_EQ(group_generate(AlgebraSpec{2, 3}, {}).order(), 1u);
  EXPECT_EQ(kind_of([] { group_generate({w("X"), w("Z")}); }), ErrorKind::NonCommutingGenerators);
  EXPECT_EQ(kind_of([] { group_generate({w("XX"), w("ZZ"), w("YY")}); }), ErrorKind::InconsistentPhase);
  EXPECT_EQ(kind_of([] { group_generate({w("Z"), w("Z").with_phase(2)}); }), ErrorKind::InconsistentPhase);
}

TEST(Group, ClosedAbelianAndPhaseConsistent) {
  const auto g = build_code("five_qubit").group;
  for (const auto &a : g.elements()) {
    ASSERT_TRUE(g.find(a.adjoint().key()).has_value());
    EXPECT_EQ(g.elements()[*g.find(a.adjoint().key())], a.adjoint());
    for (const auto &b : g.elements()) {
      const PauliWord p = word_mul(a, b);
      const auto idx = g.find(p.key());
      ASSERT_TRUE(idx.has_value());
      EXPECT_EQ(g.elements()[*idx], p);
      EXPECT_EQ(commutation_phase(a, b), 0u);
    }
  }
  // The fifth cyclic shift belongs to the group.
  EXPECT_TRUE(g.find(w("XZZXI").key()).has_value());
}

TEST(Group, QutritGenerators) {
  const AlgebraSpec spec{3, 2};
  const PauliWord xx(spec, {1, 1}, {0, 0});
  const PauliWord zz(spec, {0, 0}, {1, 2});
  const auto g = group_generate(spec, {xx, zz});
  EXPECT_EQ(g.order(), 9u);
  EXPECT_NEAR(code_projector(g).trace().real(), 1.0, 1e-12);
}

TEST(Projector, RanksAndFixedPoints) {
  EXPECT_NEAR(code_projector(group_generate({w("YY")})).trace().real(), 2.0, 1e-12);
  const auto five = build_code("five_qubit");
  EXPECT_NEAR(five.projector.trace().real(), 2.0, 1e-12);
  EXPECT_EQ(five.m, 1u);
  EXPECT_TRUE(five.projector.is_projector(1e-10));
  for (const auto &s : five.group.elements()) {
    const DenseOperator sd = to_dense(s);
    EXPECT_LT((sd * five.projector).distance(five.projector), 1e-10);
    EXPECT_LT((five.projector * sd).distance(five.projector), 1e-10);
  }
  const auto trivial = code_projector(group_generate(AlgebraSpec{2, 2}, {}));
  EXPECT_LT(trivial.distance(DenseOperator::identity(4)), 1e-15);
}

TEST(Character, FiveQubitRows) {
  const auto code = build_code("five_qubit");
  EXPECT_EQ(signs(character_row(w("XIIII"), code.check_words)), (std::vector<int>{1, 1, -1, -1, 1}));
  EXPECT_EQ(signs(character_row(w("YIIII"), code.check_words)), (std::vector<int>{1, -1, -1, -1, -1}));
  EXPECT_EQ(signs(character_row(w("ZIIII"), code.check_words)), (std::vector<int>{1, -1, 1, 1, -1}));
  EXPECT_EQ(signs(character_of(w("XIIII"), code.group).phase_exps), (std::vector<int>{1, 1, -1, -1}));
  for (const auto &s : code.group.elements()) EXPECT_TRUE(character_of(s, code.group).is_trivial());
}

TEST(Character, OperatorSumInputs) {
  const auto g = group_generate({w("YY")});
  const OperatorSum xi(w("XI"));
  EXPECT_EQ(character_of(cplx{0.0, 2.0} * xi, g), character_of(w("XI"), g));
  // X I + I X commutes projectively with YY (both terms pick up -1).
  EXPECT_EQ(signs(character_of(xi + OperatorSum(w("IX")), g).phase_exps), (std::vector<int>{-1}));
  EXPECT_EQ(kind_of([&] { character_of(xi + OperatorSum(w("II")), g); }), ErrorKind::NotProjectivelyCommuting);
}

TEST(Character, CosetInvarianceAndCharacterSum) {
  std::mt19937_64 rng(301);
  const auto code = build_code("five_qubit");
  const auto &g = code.group;
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  for (int t = 0; t < 50; ++t) {
    const PauliWord e = random_word(rng, AlgebraSpec{2, 5});
    const PauliWord s = g.elements()[pick(rng)];
    EXPECT_EQ(character_of(word_mul(e, s), g), character_of(e, g));
  }
  // Every character of the group arises from some single-site word product.
  for (const auto &e : weight_one_errors(AlgebraSpec{2, 5})) {
    const auto chi = character_of(e, g);
    cplx sum = 0.0;
    for (std::size_t j = 0; j < g.order(); ++j)
      sum += PauliWord(AlgebraSpec{2, 1}, {0}, {0}, chi.evaluate(g.powers()[j])).phase();
    if (chi.is_trivial())
      EXPECT_NEAR(std::abs(sum - 16.0), 0.0, 1e-12);
    else
      EXPECT_NEAR(std::abs(sum), 0.0, 1e-12);
  }
}

TEST(Syndromes, RepetitionTwo) {
  const auto g = group_generate({w("YY")});
  const auto classes = syndrome_classes({w("II"), w("XI"), w("IX"), w("XX")}, g);
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_TRUE(classes[0].character.is_trivial());
  EXPECT_EQ(classes[0].members, (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(classes[1].members, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(classes[1].representative, 2u);  // "IX" < "XI"
  const auto zz = syndrome_classes({w("II"), w("ZZ")}, g);
  EXPECT_EQ(zz.size(), 1u);
}

TEST(Syndromes, FiveQubitWeightOneAreDistinct) {
  const auto code = build_code("five_qubit");
  auto errors = weight_one_errors(AlgebraSpec{2, 5});
  ASSERT_EQ(errors.size(), 16u);
  const auto classes = syndrome_classes(errors, code.group);
  EXPECT_EQ(classes.size(), 16u);
  std::size_t nontrivial = 0;
  for (const auto &c : classes) nontrivial += !c.character.is_trivial();
  EXPECT_EQ(nontrivial, 15u);
}

TEST(KnillLaflamme, FiveQubitWeightOne) {
  const auto code = build_code("five_qubit");
  const auto report = kl_check(code, dense_errors(weight_one_errors(AlgebraSpec{2, 5})));
  EXPECT_TRUE(report.pass);
  EXPECT_LT(report.max_scalar_residual, 1e-10);
  EXPECT_LT((report.nu - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-10);
  std::vector<std::size_t> expected(16);
  std::iota(expected.begin(), expected.end(), 0);
  EXPECT_EQ(report.syndrome_map, expected);
}

TEST(KnillLaflamme, RepetitionTwoDetectsButCannotCorrect) {
  const auto code = build_code("rep2");
  const auto report = kl_check(code, dense_errors({w("II"), w("XI"), w("IX")}));
  EXPECT_FALSE(report.pass);
  EXPECT_GT(report.max_scalar_residual, 0.1);
  // Detection: each single error alone sends the code space to its complement.
  EXPECT_TRUE(kl_check(code, dense_errors({w("II"), w("XI")})).pass);
  EXPECT_THROW(recovery_map(code, dense_errors({w("II"), w("XI"), w("IX")})), Error);
}

TEST(KnillLaflamme, IdentityOnly) {
  const auto report = kl_check(build_code("rep3"), {DenseOperator::identity(8)});
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.nu.rows(), 1);
  EXPECT_NEAR(std::abs(report.nu(0, 0) - 1.0), 0.0, 1e-12);
}

TEST(KnillLaflamme, ScalarStructureMatchesCharacters) {
  const auto code = build_code("five_qubit");
  const auto errors = weight_one_errors(AlgebraSpec{2, 5});
  const auto &p = code.projector;
  for (const auto &e : errors)
    for (const auto &f : errors) {
      const DenseOperator block = p * to_dense(e).adjoint() * to_dense(f) * p;
      if (character_of(e, code.group) != character_of(f, code.group))
        EXPECT_LT(block.matrix().cwiseAbs().maxCoeff(), 1e-10);
      else
        EXPECT_LT(block.distance(p), 1e-10);
    }
}

TEST(Recovery, FiveQubitCorrectsWeightOne) {
  std::mt19937_64 rng(307);
  const auto code = build_code("five_qubit");
  const auto errors = dense_errors(weight_one_errors(AlgebraSpec{2, 5}));
  const KrausSet r = recovery_map(code, errors);
  EXPECT_TRUE(validate_operation(r).is_channel);
  std::vector<Matrix> scaled;
  for (const auto &e : errors) scaled.push_back(e.matrix() / 4.0);
  const KrausSet noise(scaled);
  ASSERT_TRUE(validate_operation(noise).is_channel);
  for (int t = 0; t < 50; ++t) {
    const State rho(random_code_density(rng, code));
    for (const auto &e : errors) {
      const State hit = *apply_operation(KrausSet::from_operators({e}), rho).state;
      EXPECT_LT(trace_distance(DenseOperator(apply_operation(r, hit).output), rho.density()), 1e-8);
    }
    const State noisy = *apply_operation(noise, rho).state;
    EXPECT_LT(trace_distance(DenseOperator(apply_operation(r, noisy).output), rho.density()), 1e-8);
  }
}

TEST(Recovery, IdentityAndRescaling) {
  const auto code = build_code("rep3");
  const KrausSet r = recovery_map(code, {DenseOperator::identity(8)});
  EXPECT_LT((r.operators()[0] - code.projector.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  const auto five = build_code("five_qubit");
  auto errors = dense_errors(weight_one_errors(AlgebraSpec{2, 5}));
  const KrausSet base = recovery_map(five, errors);
  for (auto &e : errors) e = std::sqrt(2.0) * e;
  const auto kl = kl_check(five, errors);
  EXPECT_NEAR(kl.nu(3, 3).real(), 2.0, 1e-10);
  const KrausSet rescaled = recovery_map(five, errors);
  EXPECT_LT((superop_of(base) - superop_of(rescaled)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Codes, MetadataAndAlphabet) {
  const auto rep2 = build_code("rep2");
  EXPECT_EQ(rep2.n, 2u);
  EXPECT_EQ(rep2.m, 1u);
  EXPECT_EQ(rep2.distance, 2u);
  EXPECT_TRUE(alphabet_in_centralizer(rep2));
  const auto rep3 = build_code("rep3");
  EXPECT_FALSE(rep3.distance.has_value());
  EXPECT_EQ(rep3.group.generators()[0], w("YYI"));
  const auto five = build_code("five_qubit");
  EXPECT_EQ(five.group.generators()[1], w("XIXZZ"));
  EXPECT_EQ(five.group.generators()[3], w("ZZXIX"));
  EXPECT_EQ(five.distance, 3u);
  const auto lx = five.logical_alphabet[0], lz = five.logical_alphabet[1];
  EXPECT_TRUE((lx * lz).approx_equal(-1.0 * (lz * lx), 1e-15));
  EXPECT_EQ(kind_of([] { build_code("steane"); }), ErrorKind::UnsupportedInput);
  EXPECT_EQ(kind_of([] {
              make_code("bad", AlgebraSpec{2, 2}, {w("YY")}, {OperatorSum(w("XI"))});
            }),
            ErrorKind::Domain);
}

TEST(CoherentRepetition, Examples) {
  const OperatorSum x(w("X")), z(w("Z"));
  EXPECT_TRUE(coherent_repetition(x, 2).approx_equal(OperatorSum(w("XX")), 1e-15));
  const cplx a{0.3, -0.2}, b{1.5, 0.0};
  const OperatorSum c5 = coherent_repetition(a * x + b * z, 5);
  EXPECT_TRUE(c5.approx_equal(a * OperatorSum(w("XXXXX")) + b * OperatorSum(w("ZZZZZ")), 1e-12));
  // Not the tensor power of the sum.
  OperatorSum power2 = tensor(a * x + b * z, a * x + b * z);
  EXPECT_FALSE(coherent_repetition(a * x + b * z, 2).approx_equal(power2, 1e-6));
  const OperatorSum c2x = coherent_repetition(x, 2), c2z = coherent_repetition(z, 2);
  EXPECT_TRUE((c2x * c2z).approx_equal(c2z * c2x, 1e-15));
  EXPECT_THROW(coherent_repetition(OperatorSum(w("Y")), 3), Error);
  EXPECT_THROW(coherent_repetition(OperatorSum(w("XX")), 3), Error);
}

TEST(CoherentRepetition, Linear) {
  std::mt19937_64 rng(311);
  for (int t = 0; t < 20; ++t) {
    const cplx a = random_cplx(rng), b = random_cplx(rng), c = random_cplx(rng), d = random_cplx(rng);
    const OperatorSum l1 = a * OperatorSum(w("X")) + b * OperatorSum(w("Z"));
    const OperatorSum l2 = c * OperatorSum(w("X")) + d * OperatorSum(w("Z"));
    EXPECT_TRUE(coherent_repetition(l1 + l2, 3).approx_equal(coherent_repetition(l1, 3) + coherent_repetition(l2, 3),
                                                             1e-12));
  }
}

TEST(Distance, NamedCodes) {
  EXPECT_EQ(distance_search(build_code("rep2"), 2).distance, 2u);
  EXPECT_EQ(distance_search(build_code("rep3"), 3).distance, 2u);
  const auto five = distance_search(build_code("five_qubit"), 5);
  EXPECT_EQ(five.distance, 3u);
  ASSERT_TRUE(five.witness.has_value());
  EXPECT_EQ(five.witness->letter_weight(), 3u);
  const auto bounded = distance_search(build_code("five_qubit"), 2);
  EXPECT_FALSE(bounded.distance.has_value());
  EXPECT_EQ(bounded.searched_up_to, 2u);
  const auto trivial = make_code("trivial", AlgebraSpec{2, 1}, {}, default_alphabet(2));
  EXPECT_EQ(distance_search(trivial, 1).distance, 1u);
}
