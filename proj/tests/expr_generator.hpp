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

#include <random>
#include <string>
#include <vector>

#include "opalg/errors.hpp"
#include "opalg/expr.hpp"

namespace opalg::testing {

// Random trees drawn from the grammar productions.
class AstGenerator {
 public:
  using Kind = ExprAst::Kind;
  using Op = ExprAst::Op;

  explicit AstGenerator(std::uint64_t seed) : rng_(seed) {}

  ExprAst expr(int depth) {
    const bool negate = coin(0.2);
    const int terms = uniform(1, 3);
    ExprAst sum;
    sum.kind = Kind::Sum;
    for (int k = 0; k < terms; ++k) {
      if (k > 0) sum.ops.push_back(coin(0.5) ? Op::Plus : Op::Minus);
      sum.children.push_back(term(depth));
    }
    if (negate) {
      ExprAst n;
      n.kind = Kind::Negate;
      n.children.push_back(std::move(sum.children.front()));
      sum.children.front() = std::move(n);
    }
    if (terms == 1) return std::move(sum.children.front());
    return sum;
  }

 private:
  std::mt19937_64 rng_;

  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  ExprAst term(int depth) {
    const int factors = uniform(1, 3);
    ExprAst t;
    t.kind = Kind::Term;
    for (int k = 0; k < factors; ++k) {
      if (k > 0) t.ops.push_back(coin(0.5) ? Op::Times : Op::Tensor);
      t.children.push_back(factor(depth));
    }
    if (factors == 1) return std::move(t.children.front());
    return t;
  }

  ExprAst factor(int depth) {
    ExprAst a = atom(depth);
    if (coin(0.2)) {
      ExprAst adj;
      adj.kind = Kind::Adjoint;
      adj.children.push_back(std::move(a));
      a = std::move(adj);
    }
    if (coin(0.2)) {
      ExprAst pw;
      pw.kind = Kind::Power;
      pw.exponent = static_cast<std::uint64_t>(uniform(0, 12));
      pw.children.push_back(std::move(a));
      a = std::move(pw);
    }
    return a;
  }

  ExprAst atom(int depth) {
    ExprAst a;
    switch (uniform(0, depth < 4 ? 4 : 3)) {
      case 0: {
        a.kind = Kind::Number;
        const double choices[] = {0.0, 1.0, 2.0, 0.5, 1e-5, 3.25e12, 123456789.0};
        a.number = coin(0.5) ? choices[uniform(0, 6)] : std::uniform_real_distribution<double>(0.0, 10.0)(rng_);
        break;
      }
      case 1: a.kind = Kind::ImaginaryUnit; break;
      case 2: {
        a.kind = Kind::Name;
        const auto &names = builtin_names();
        a.name = names[static_cast<std::size_t>(uniform(0, static_cast<int>(names.size()) - 1))];
        break;
      }
      case 3: {
        a.kind = Kind::Word;
        const int len = uniform(2, 5);
        for (int k = 0; k < len; ++k) a.name += "IXYZ"[uniform(0, 3)];
        break;
      }
      default:
        a.kind = Kind::Paren;
        a.children.push_back(expr(depth + 1));
    }
    return a;
  }
};

struct FuzzSummary {
  std::size_t inputs = 0;
  std::size_t parsed = 0;
  std::size_t round_trip_failures = 0;
  std::size_t bad_positions = 0;
  std::size_t foreign_exceptions = 0;
};

// Parses token soup mixed with raw bytes; anything other than an opalg::Error
// counts as a foreign exception.
inline FuzzSummary fuzz_parser(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> pieces = {
      "X", "Y", "Z", "I", "H", "i", "CNOT", "E01", "sigma[", "]", "(", ")", "+", "-", "*", "^", "'",
      " ox ", "\xE2\x8A\x97", "IXZZX", "0.5", "1e", "3", " ", "\xE2", "\xFF", std::string(1, '\0'), "ox",
      "^9999999", ".", "e-"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> byte(0, 255), len(0, 24);
  FuzzSummary s;
  for (std::size_t k = 0; k < count; ++k) {
    std::string text;
    for (int j = len(rng); j > 0; --j) {
      if (byte(rng) < 40) {
        text += static_cast<char>(byte(rng));
      } else {
        text += pieces[pick(rng)];
      }
    }
    ++s.inputs;
    try {
      const ExprAst ast = parse_expr(text);
      ++s.parsed;
      if (!(parse_expr(print_expr(ast)) == ast)) ++s.round_trip_failures;
      eval_expr_natural(ast);
    } catch (const ParseError &e) {
      if (e.position() < 1) ++s.bad_positions;
    } catch (const Error &) {
    } catch (...) {
      ++s.foreign_exceptions;
    }
  }
  return s;
}

}  // namespace opalg::testing
