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

#include <random>
#include <string>

#include "opalg/composite.hpp"
#include "opalg/errors.hpp"
#include "opalg/expr.hpp"
#include "opalg/kernels.hpp"
#include "expr_generator.hpp"

namespace opalg {
namespace {

using Kind = ExprAst::Kind;
using Op = ExprAst::Op;

const cplx kI{0.0, 1.0};

Matrix pauli(char c) {
  Matrix m(2, 2);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = Matrix::Identity(2, 2);
  }
  return m;
}

Matrix dense(const std::string &text, AlgebraSpec spec = {2, 1}) {
  return to_dense(eval_expr(parse_expr(text), spec)).matrix();
}

std::size_t parse_error_position(const std::string &text) {
  try {
    parse_expr(text);
  } catch (const ParseError &e) {
    return e.position();
  }
  return 0;
}

TEST(ExprParse, IYIsMinusCanonicalXZ) {
  const OperatorSum v = eval_expr(parse_expr("i*Y"), {2, 1});
  ASSERT_EQ(v.size(), 1u);
  const WordKey xz{{1}, {1}};
  EXPECT_NEAR(std::abs(v.coeff(xz) - cplx{-1.0, 0.0}), 0.0, 1e-15);
}

TEST(ExprParse, TensorOfProjectorAndX) {
  Matrix expected = Matrix::Zero(4, 4);
  expected.block(0, 0, 2, 2) = 2.0 * pauli('X');
  EXPECT_LT((dense("(I+Z) ox X", {2, 2}) - expected).norm(), 1e-12);
}

TEST(ExprParse, DoubleStarIsSyntaxErrorAtThree) { EXPECT_EQ(parse_error_position("X**Z"), 3u); }

TEST(ExprParse, ErrorPositionsCountCharacters) {
  EXPECT_EQ(parse_error_position("X\xE2\x8A\x97*Z"), 3u);
  EXPECT_EQ(parse_error_position(""), 1u);
  EXPECT_EQ(parse_error_position("X +"), 4u);
  EXPECT_EQ(parse_error_position("(X"), 3u);
  EXPECT_EQ(parse_error_position("X)"), 2u);
  EXPECT_EQ(parse_error_position("X Z"), 3u);
  EXPECT_EQ(parse_error_position("X''"), 3u);
  EXPECT_EQ(parse_error_position("X^"), 3u);
}

TEST(ExprParse, UnknownNamesAreReported) {
  EXPECT_EQ(parse_error_position("X + Q"), 5u);
  EXPECT_EQ(parse_error_position("2*foo"), 3u);
  EXPECT_EQ(parse_error_position("sigma[7]"), 1u);
  EXPECT_EQ(parse_error_position("Xox Z"), 1u);
}

TEST(ExprParse, ExponentOverflowIsAnError) {
  EXPECT_EQ(parse_error_position("X^99999999999999999999999"), 3u);
  EXPECT_EQ(parse_error_position("X^2000000"), 3u);
  EXPECT_NO_THROW(parse_expr("X^1048576"));
}

TEST(ExprParse, NumbersOutOfRangeAreErrors) { EXPECT_EQ(parse_error_position("1e999*X"), 1u); }

TEST(ExprParse, WhitespaceInsensitive) {
  EXPECT_EQ(parse_expr(" X  *Z\t+ \n 2 "), parse_expr("X*Z+2"));
  EXPECT_EQ(parse_expr("X ox Z"), parse_expr("X\xE2\x8A\x97Z"));
}

TEST(ExprParse, TreeShapes) {
  const ExprAst a = parse_expr("-X + Y - Z");
  ASSERT_EQ(a.kind, Kind::Sum);
  ASSERT_EQ(a.children.size(), 3u);
  EXPECT_EQ(a.children[0].kind, Kind::Negate);
  EXPECT_EQ(a.ops, (std::vector<Op>{Op::Plus, Op::Minus}));

  const ExprAst t = parse_expr("X * Y ox Z");
  ASSERT_EQ(t.kind, Kind::Term);
  EXPECT_EQ(t.ops, (std::vector<Op>{Op::Times, Op::Tensor}));

  const ExprAst f = parse_expr("(X+Z)'^3");
  ASSERT_EQ(f.kind, Kind::Power);
  EXPECT_EQ(f.exponent, 3u);
  EXPECT_EQ(f.children.at(0).kind, Kind::Adjoint);
  EXPECT_EQ(f.children.at(0).children.at(0).kind, Kind::Paren);

  EXPECT_EQ(parse_expr("IXZZX").kind, Kind::Word);
  EXPECT_EQ(parse_expr("sigma[2]").kind, Kind::Name);
  EXPECT_EQ(parse_expr("i").kind, Kind::ImaginaryUnit);
}

TEST(ExprParse, PrinterIsAscii) {
  EXPECT_EQ(print_expr(parse_expr("X\xE2\x8A\x97(Z+0.5)'^2")), "X ox (Z + 0.5)'^2");
  EXPECT_EQ(print_expr(parse_expr("-2*i")), "-2 * i");
}

TEST(ExprParse, NestingLimit) {
  const std::string ok = std::string(kMaxExprDepth, '(') + "X" + std::string(kMaxExprDepth, ')');
  EXPECT_NO_THROW(parse_expr(ok));
  const std::string deep = std::string(kMaxExprDepth + 1, '(') + "X" + std::string(kMaxExprDepth + 1, ')');
  EXPECT_THROW(parse_expr(deep), ParseError);
}

TEST(ExprParse, LongChainsStayFlat) {
  std::string text = "X";
  for (int k = 0; k < 20000; ++k) text += "+X";
  const ExprAst a = parse_expr(text);
  EXPECT_EQ(a.children.size(), 20001u);
  const OperatorSum v = eval_expr(a, {2, 1});
  EXPECT_NEAR(std::abs(v.coeff(WordKey{{1}, {0}}) - 20001.0), 0.0, 1e-9);
}

TEST(ExprEval, CommutatorMatchesDenseOracle) {
  const Matrix expected = pauli('X') * pauli('Z') - pauli('Z') * pauli('X');
  EXPECT_LT((dense("X*Z - Z*X") - expected).norm(), 1e-12);
  EXPECT_LT((dense("X*Z - Z*X") + 2.0 * kI * pauli('Y')).norm(), 1e-12);
}

TEST(ExprEval, HalfIPlusZIsProjector) {
  const Matrix p = dense("0.5*(I+Z)");
  EXPECT_LT((p * p - p).norm(), 1e-12);
  EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
}

TEST(ExprEval, HadamardConjugatesZToX) {
  EXPECT_LT((dense("H*Z*H") - pauli('X')).norm(), 1e-12);
  const Matrix h = (pauli('X') + pauli('Z')) / std::sqrt(2.0);
  EXPECT_LT((dense("H") - h).norm(), 1e-12);
}

TEST(ExprEval, XYZIsIUnit) {
  const OperatorSum v = eval_expr_natural(parse_expr("X*Y*Z"));
  EXPECT_TRUE(v.approx_equal(OperatorSum::identity({2, 1}, kI), 1e-15));
}

TEST(ExprEval, BuiltinAliasesMatchMatrices) {
  EXPECT_LT((dense("CNOT", {2, 2}) - cnot().matrix()).norm(), 1e-12);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Matrix e = Matrix::Zero(2, 2);
      e(a, b) = 1.0;
      EXPECT_LT((dense("E" + std::to_string(a) + std::to_string(b)) - e).norm(), 1e-12);
    }
  for (int k = 0; k < 4; ++k) {
    EXPECT_LT((dense("sigma[" + std::to_string(k) + "]") - pauli("IXYZ"[k])).norm(), 1e-12);
  }
}

TEST(ExprEval, WordStringsMatchKronecker) {
  const Matrix expected = kernels::kron(kernels::kron(pauli('X'), pauli('Y')), pauli('Z'));
  EXPECT_LT((dense("XYZ", {2, 3}) - expected).norm(), 1e-12);
  EXPECT_LT((dense("X ox Y ox Z", {2, 3}) - expected).norm(), 1e-12);
}

TEST(ExprEval, AdjointAndPower) {
  const Matrix a = pauli('X') + kI * pauli('Z');
  EXPECT_LT((dense("(X + i*Z)'") - a.adjoint()).norm(), 1e-12);
  EXPECT_LT((dense("(X + i*Z)^3") - a * a * a).norm(), 1e-12);
  EXPECT_LT((dense("(X + Z)^0") - Matrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((dense("i'") + kI * Matrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((dense("i^2") + Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(ExprEval, ScalarsPromoteToIdentity) {
  EXPECT_LT((dense("2 + Z") - (2.0 * Matrix::Identity(2, 2) + pauli('Z'))).norm(), 1e-12);
  EXPECT_LT((dense("3", {2, 2}) - 3.0 * Matrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(ExprEval, SpecMismatches) {
  auto kind_of = [](const std::string &text, AlgebraSpec spec) {
    try {
      eval_expr(parse_expr(text), spec);
    } catch (const Error &e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  EXPECT_EQ(kind_of("X ox X", {2, 1}), ErrorKind::SpecMismatch);
  EXPECT_EQ(kind_of("X + XX", {2, 2}), ErrorKind::SpecMismatch);
  EXPECT_EQ(kind_of("Y", {3, 1}), ErrorKind::UnsupportedInput);
  EXPECT_EQ(kind_of("H", {3, 1}), ErrorKind::UnsupportedInput);
  EXPECT_THROW(parse_expr("X ox Z", AlgebraSpec{2, 1}), Error);
  EXPECT_NO_THROW(parse_expr("X ox Z", AlgebraSpec{2, 2}));
}

TEST(ExprEval, QutritWeylRelation) {
  const AlgebraSpec s{3, 1};
  const OperatorSum zx = eval_expr(parse_expr("Z*X"), s);
  const OperatorSum xz = eval_expr(parse_expr("X*Z"), s);
  const cplx w = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
  EXPECT_TRUE(xz.approx_equal(w * zx, 1e-12));
  EXPECT_TRUE(eval_expr(parse_expr("X^3"), s).approx_equal(OperatorSum::identity(s), 1e-12));
}

TEST(ExprEval, CanonicalOrderIsDeterministic) {
  const OperatorSum a = eval_expr(parse_expr("Z + X + I + Y"), {2, 1});
  const OperatorSum b = eval_expr(parse_expr("Y + I + X + Z"), {2, 1});
  EXPECT_EQ(a.to_string(), b.to_string());
}

TEST(ExprRoundTrip, TwoHundredRandomTrees) {
  testing::AstGenerator gen(20261017);
  for (int k = 0; k < 200; ++k) {
    const ExprAst ast = gen.expr(0);
    const std::string text = print_expr(ast);
    ExprAst back;
    ASSERT_NO_THROW(back = parse_expr(text)) << text;
    EXPECT_EQ(back, ast) << text;
    EXPECT_EQ(print_expr(back), text);
  }
}

TEST(ExprFuzz, RandomInputsOnlyRaiseLibraryErrors) {
  const testing::FuzzSummary s = testing::fuzz_parser(7, 20000);
  EXPECT_EQ(s.foreign_exceptions, 0u);
  EXPECT_EQ(s.round_trip_failures, 0u);
  EXPECT_EQ(s.bad_positions, 0u);
  EXPECT_GT(s.parsed, 100u);
}

}  // namespace
}  // namespace opalg
