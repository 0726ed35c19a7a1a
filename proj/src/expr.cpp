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


#include "opalg/expr.hpp"

#include <charconv>
#include <cmath>
#include <optional>

#include "opalg/errors.hpp"
#include "opalg/format.hpp"

namespace opalg {

namespace {

using Kind = ExprAst::Kind;
using Op = ExprAst::Op;

constexpr std::string_view kTensorGlyph = "\xE2\x8A\x97";  // U+2297

bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_word(std::string_view s) {
  if (s.size() < 2) return false;
  for (char c : s) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') return false;
  }
  return true;
}

ExprAst node(Kind kind) {
  ExprAst a;
  a.kind = kind;
  return a;
}

ExprAst wrap(Kind kind, ExprAst child) {
  ExprAst a = node(kind);
  a.children.push_back(std::move(child));
  return a;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ExprAst run() {
    ExprAst out = expr();
    skip_ws();
    if (pos_ < s_.size()) fail(pos_, s_[pos_] == ')' ? "unmatched ')'" : "unexpected character");
    return out;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;

  std::size_t char_position(std::size_t byte) const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < byte && i < s_.size(); ++i) {
      if ((static_cast<unsigned char>(s_[i]) & 0xC0) != 0x80) ++count;
    }
    return count + 1;
  }

  [[noreturn]] void fail(std::size_t byte, const std::string &msg) const {
    const std::size_t p = char_position(byte);
    throw ParseError(p, msg + " at position " + std::to_string(p));
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) {
      ++pos_;
    }
  }

  // Consumes a tensor operator if one starts at pos_.
  bool take_tensor() {
    if (s_.substr(pos_, kTensorGlyph.size()) == kTensorGlyph) {
      pos_ += kTensorGlyph.size();
      return true;
    }
    if (s_.substr(pos_, 2) == "ox" && (pos_ + 2 >= s_.size() || !is_ident_char(s_[pos_ + 2]))) {
      pos_ += 2;
      return true;
    }
    return false;
  }

  ExprAst expr() {
    skip_ws();
    bool negate = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      negate = true;
      ++pos_;
    }
    ExprAst first = term();
    if (negate) first = wrap(Kind::Negate, std::move(first));
    ExprAst sum = node(Kind::Sum);
    sum.children.push_back(std::move(first));
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
      sum.ops.push_back(s_[pos_] == '+' ? Op::Plus : Op::Minus);
      ++pos_;
      sum.children.push_back(term());
    }
    if (sum.children.size() == 1) return std::move(sum.children.front());
    return sum;
  }

  ExprAst term() {
    ExprAst t = node(Kind::Term);
    t.children.push_back(factor());
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        t.ops.push_back(Op::Times);
      } else if (take_tensor()) {
        t.ops.push_back(Op::Tensor);
      } else {
        break;
      }
      t.children.push_back(factor());
    }
    if (t.children.size() == 1) return std::move(t.children.front());
    return t;
  }

  ExprAst factor() {
    ExprAst a = atom();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '\'') {
      ++pos_;
      a = wrap(Kind::Adjoint, std::move(a));
      skip_ws();
    }
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
      if (start == pos_) fail(start, "expected integer exponent");
      std::uint64_t k = 0;
      auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, k);
      if (ec != std::errc() || k > kMaxExponent) fail(start, "exponent too large");
      a = wrap(Kind::Power, std::move(a));
      a.exponent = k;
    }
    return a;
  }

  ExprAst number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    if (pos_ + 1 < s_.size() && s_[pos_] == '.' && is_digit(s_[pos_ + 1])) {
      ++pos_;
      while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && is_digit(s_[q])) {
        pos_ = q;
        while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
      }
    }
    ExprAst a = node(Kind::Number);
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, a.number);
    if (ec != std::errc() || ptr != s_.data() + pos_ || !std::isfinite(a.number)) {
      fail(start, "invalid number");
    }
    return a;
  }

  ExprAst atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail(pos_, "unexpected end of input, expected operand");
    const char c = s_[pos_];
    if (c == '(') {
      if (++depth_ > kMaxExprDepth) fail(pos_, "parentheses nested too deeply");
      ++pos_;
      ExprAst inner = expr();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail(pos_, "expected ')'");
      ++pos_;
      --depth_;
      return wrap(Kind::Paren, std::move(inner));
    }
    if (is_digit(c) || (c == '.' && pos_ + 1 < s_.size() && is_digit(s_[pos_ + 1]))) {
      return number();
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
      std::string ident(s_.substr(start, pos_ - start));
      if (ident == "sigma" && pos_ < s_.size() && s_[pos_] == '[') {
        const std::size_t close = s_.find(']', pos_);
        if (close == std::string_view::npos) fail(pos_, "expected ']'");
        ident = std::string(s_.substr(start, close + 1 - start));
        pos_ = close + 1;
      }
      if (ident == "i") return node(Kind::ImaginaryUnit);
      for (const auto &name : builtin_names()) {
        if (ident == name) {
          ExprAst a = node(Kind::Name);
          a.name = ident;
          return a;
        }
      }
      if (is_word(ident)) {
        ExprAst a = node(Kind::Word);
        a.name = ident;
        return a;
      }
      fail(start, "unknown name '" + ident + "'");
    }
    fail(pos_, "expected operand");
  }
};

// A scalar (no operator) or an operator sum.
struct Value {
  std::optional<OperatorSum> op;
  cplx scalar{1.0, 0.0};
};

Value of(OperatorSum s) { return Value{std::move(s), {1.0, 0.0}}; }
Value of(cplx c) { return Value{std::nullopt, c}; }

OperatorSum promote(const Value &v, const AlgebraSpec &spec) {
  return v.op ? *v.op : OperatorSum::identity(spec, v.scalar);
}

Value add(const Value &a, const Value &b, double sign) {
  if (!a.op && !b.op) return of(a.scalar + sign * b.scalar);
  const AlgebraSpec spec = a.op ? a.op->spec() : b.op->spec();
  return of(promote(a, spec) + sign * promote(b, spec));
}

Value multiply(const Value &a, const Value &b) {
  if (!a.op && !b.op) return of(a.scalar * b.scalar);
  if (!a.op) return of(a.scalar * *b.op);
  if (!b.op) return of(*a.op * b.scalar);
  return of(*a.op * *b.op);
}

Value tensor_values(const Value &a, const Value &b) {
  if (!a.op || !b.op) return multiply(a, b);
  return of(tensor(*a.op, *b.op));
}

cplx scalar_power(cplx base, std::uint64_t k) {
  cplx out{1.0, 0.0};
  while (k) {
    if (k & 1) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

void require_qubit(std::uint32_t d, const std::string &name) {
  if (d != 2) {
    throw Error(ErrorKind::UnsupportedInput, "'" + name + "' is defined only for d=2");
  }
}

OperatorSum named(const std::string &name, std::uint32_t d) {
  const AlgebraSpec one(d, 1);
  const cplx i{0.0, 1.0};
  const auto x = [&] { return OperatorSum(PauliWord::x_at(one, 0)); };
  const auto z = [&] { return OperatorSum(PauliWord::z_at(one, 0)); };
  const auto id = [&] { return OperatorSum::identity(one); };
  const auto y = [&] {
    require_qubit(d, name);
    return OperatorSum(PauliWord::from_letters("Y"));
  };
  if (name == "I" || name == "sigma[0]") return id();
  if (name == "X" || name == "sigma[1]") return x();
  if (name == "Y" || name == "sigma[2]") return y();
  if (name == "Z" || name == "sigma[3]") return z();
  require_qubit(d, name);
  if (name == "H") return (1.0 / std::sqrt(2.0)) * (x() + z());
  if (name == "E00") return 0.5 * (id() + z());
  if (name == "E11") return 0.5 * (id() - z());
  if (name == "E01") return 0.5 * (x() + i * y());
  if (name == "E10") return 0.5 * (x() - i * y());
  if (name == "CNOT") {
    const OperatorSum p0 = 0.5 * (id() + z()), p1 = 0.5 * (id() - z());
    return tensor(p0, id()) + tensor(p1, x());
  }
  throw Error(ErrorKind::Domain, "unknown name '" + name + "'");
}

OperatorSum word(const std::string &letters, std::uint32_t d) {
  if (d == 2) return OperatorSum(PauliWord::from_letters(letters));
  const AlgebraSpec spec(d, static_cast<std::uint32_t>(letters.size()));
  Exponents x(spec.n, 0), z(spec.n, 0);
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (letters[k] == 'Y') require_qubit(d, "Y");
    x[k] = letters[k] == 'X';
    z[k] = letters[k] == 'Z';
  }
  return OperatorSum(PauliWord(spec, std::move(x), std::move(z)));
}

Value eval(const ExprAst &a, std::uint32_t d) {
  switch (a.kind) {
    case Kind::Number: return of(cplx{a.number, 0.0});
    case Kind::ImaginaryUnit: return of(cplx{0.0, 1.0});
    case Kind::Name: return of(named(a.name, d));
    case Kind::Word: return of(word(a.name, d));
    case Kind::Paren: return eval(a.children.at(0), d);
    case Kind::Negate: return multiply(of(cplx{-1.0, 0.0}), eval(a.children.at(0), d));
    case Kind::Adjoint: {
      Value v = eval(a.children.at(0), d);
      return v.op ? of(v.op->adjoint()) : of(std::conj(v.scalar));
    }
    case Kind::Power: {
      Value v = eval(a.children.at(0), d);
      return v.op ? of(power(*v.op, a.exponent)) : of(scalar_power(v.scalar, a.exponent));
    }
    case Kind::Sum:
    case Kind::Term: {
      Value acc = eval(a.children.at(0), d);
      for (std::size_t k = 1; k < a.children.size(); ++k) {
        const Value rhs = eval(a.children[k], d);
        switch (a.ops.at(k - 1)) {
          case Op::Plus: acc = add(acc, rhs, 1.0); break;
          case Op::Minus: acc = add(acc, rhs, -1.0); break;
          case Op::Times: acc = multiply(acc, rhs); break;
          case Op::Tensor: acc = tensor_values(acc, rhs); break;
        }
      }
      return acc;
    }
  }
  throw Error(ErrorKind::Domain, "malformed expression tree");
}

void print(const ExprAst &a, std::string &out) {
  switch (a.kind) {
    case Kind::Number: out += format_double(a.number); return;
    case Kind::ImaginaryUnit: out += 'i'; return;
    case Kind::Name:
    case Kind::Word: out += a.name; return;
    case Kind::Paren:
      out += '(';
      print(a.children.at(0), out);
      out += ')';
      return;
    case Kind::Negate:
      out += '-';
      print(a.children.at(0), out);
      return;
    case Kind::Adjoint:
      print(a.children.at(0), out);
      out += '\'';
      return;
    case Kind::Power:
      print(a.children.at(0), out);
      out += '^' + std::to_string(a.exponent);
      return;
    case Kind::Sum:
    case Kind::Term:
      for (std::size_t k = 0; k < a.children.size(); ++k) {
        if (k > 0) {
          switch (a.ops.at(k - 1)) {
            case Op::Plus: out += " + "; break;
            case Op::Minus: out += " - "; break;
            case Op::Times: out += " * "; break;
            case Op::Tensor: out += " ox "; break;
          }
        }
        print(a.children[k], out);
      }
      return;
  }
}

}  // namespace

const std::vector<std::string> &builtin_names() {
  static const std::vector<std::string> names = {
      "I", "X", "Y", "Z", "H", "CNOT", "E00", "E01", "E10", "E11",
      "sigma[0]", "sigma[1]", "sigma[2]", "sigma[3]"};
  return names;
}

ExprAst parse_expr(std::string_view text) { return Parser(text).run(); }

ExprAst parse_expr(std::string_view text, AlgebraSpec spec) {
  ExprAst ast = parse_expr(text);
  eval_expr(ast, spec);
  return ast;
}

std::string print_expr(const ExprAst &ast) {
  std::string out;
  print(ast, out);
  return out;
}

OperatorSum eval_expr(const ExprAst &ast, AlgebraSpec spec) {
  const Value v = eval(ast, spec.d);
  if (!v.op) return OperatorSum::identity(spec, v.scalar);
  if (v.op->spec().n != spec.n) {
    throw Error(ErrorKind::SpecMismatch,
                "expression acts on " + std::to_string(v.op->spec().n) + " site(s) but the algebra has " +
                    std::to_string(spec.n));
  }
  return *v.op;
}

OperatorSum eval_expr_natural(const ExprAst &ast, std::uint32_t d) {
  const Value v = eval(ast, d);
  return v.op ? *v.op : OperatorSum::identity(AlgebraSpec(d, 1), v.scalar);
}

}  // namespace opalg
