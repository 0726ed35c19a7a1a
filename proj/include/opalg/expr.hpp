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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "opalg/pauli_algebra.hpp"

namespace opalg {

/// Syntax tree of an operator expression.
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := factor (('*' | '⊗' | "ox") factor)*
///   factor := atom ["'"] ['^' int]
///   atom   := number | 'i' | name | word | '(' expr ')'
///
/// Sums and terms are n-ary: `ops[k]` joins `children[k]` and
/// `children[k + 1]`, left to right.
struct ExprAst {
  enum class Kind { Number, ImaginaryUnit, Name, Word, Sum, Term, Negate, Adjoint, Power, Paren };
  enum class Op : char { Plus = '+', Minus = '-', Times = '*', Tensor = 'x' };

  Kind kind = Kind::Number;
  double number = 0.0;
  std::string name;
  std::uint64_t exponent = 0;
  std::vector<ExprAst> children;
  std::vector<Op> ops;

  friend bool operator==(const ExprAst &, const ExprAst &) = default;
};

constexpr std::size_t kMaxExprDepth = 256;
constexpr std::uint64_t kMaxExponent = 1u << 20;

/// Throws ParseError with a 1-based character position.
ExprAst parse_expr(std::string_view text);
/// Parses and checks that the expression evaluates on `spec`.
ExprAst parse_expr(std::string_view text, AlgebraSpec spec);

/// ASCII rendering; parentheses appear only for Paren nodes.
std::string print_expr(const ExprAst &ast);

/// Evaluates on `spec`; throws SpecMismatch when the site count differs.
OperatorSum eval_expr(const ExprAst &ast, AlgebraSpec spec);
/// Evaluates with local dimension d and the site count the expression implies.
OperatorSum eval_expr_natural(const ExprAst &ast, std::uint32_t d = 2);

/// Names recognised by the parser besides word strings.
const std::vector<std::string> &builtin_names();

}  // namespace opalg
