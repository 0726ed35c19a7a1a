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

#include "opalg/pauli_algebra.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "opalg/errors.hpp"
#include "opalg/format.hpp"

namespace opalg {
namespace {

std::uint32_t mod(std::int64_t v, std::uint32_t m) {
  const std::int64_t r = v % static_cast<std::int64_t>(m);
  return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

void require_same(const AlgebraSpec &a, const AlgebraSpec &b) {
  if (!(a == b)) {
    throw Error(ErrorKind::SpecMismatch,
                "algebra specs differ: (d=" + std::to_string(a.d) + ", n=" +
                    std::to_string(a.n) + ") vs (d=" + std::to_string(b.d) +
                    ", n=" + std::to_string(b.n) + ")");
  }
}

// omega_{2d}^p, exact on quarter turns.
cplx root_of_unity(std::uint32_t p, std::uint32_t d) {
  const std::uint32_t order = 2 * d;
  p %= order;
  if ((4 * static_cast<std::uint64_t>(p)) % order == 0) {
    switch ((4 * static_cast<std::uint64_t>(p)) / order) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, std::numbers::pi * p / d);
}

PauliWord word_of(const AlgebraSpec &spec, const WordKey &key) {
  return PauliWord(spec, key.x, key.z, 0);
}

}  // namespace

AlgebraSpec::AlgebraSpec(std::uint32_t d_, std::uint32_t n_) : d(d_), n(n_) {
  if (d < 2) throw Error(ErrorKind::Domain, "local dimension d must be >= 2");
  if (n < 1) throw Error(ErrorKind::Domain, "site count n must be >= 1");
}

std::optional<std::size_t> AlgebraSpec::dense_dim() const {
  std::size_t dim = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    dim *= d;
    if (dim > tol::kMaxDenseDim) return std::nullopt;
  }
  return dim;
}

PauliWord::PauliWord(AlgebraSpec spec) : spec_(spec) {
  key_.x.assign(spec.n, 0);
  key_.z.assign(spec.n, 0);
}

PauliWord::PauliWord(AlgebraSpec spec, Exponents x, Exponents z, std::int64_t phase_exp)
    : spec_(spec), phase_(mod(phase_exp, 2 * spec.d)), key_{std::move(x), std::move(z)} {
  if (key_.x.size() != spec.n || key_.z.size() != spec.n) {
    throw Error(ErrorKind::SpecMismatch, "exponent vectors must have length n");
  }
  for (auto &e : key_.x) e %= spec.d;
  for (auto &e : key_.z) e %= spec.d;
}

PauliWord PauliWord::x_at(AlgebraSpec spec, std::uint32_t site, std::uint32_t power) {
  if (site >= spec.n) throw Error(ErrorKind::Domain, "site index out of range");
  PauliWord w(spec);
  w.key_.x[site] = power % spec.d;
  return w;
}

PauliWord PauliWord::z_at(AlgebraSpec spec, std::uint32_t site, std::uint32_t power) {
  if (site >= spec.n) throw Error(ErrorKind::Domain, "site index out of range");
  PauliWord w(spec);
  w.key_.z[site] = power % spec.d;
  return w;
}

PauliWord PauliWord::from_letters(const std::string &letters) {
  if (letters.empty()) throw Error(ErrorKind::Domain, "empty Pauli word");
  const AlgebraSpec spec(2, static_cast<std::uint32_t>(letters.size()));
  Exponents x(spec.n, 0), z(spec.n, 0);
  std::int64_t phase = 0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    switch (letters[i]) {
      case 'I': break;
      case 'X': x[i] = 1; break;
      case 'Z': z[i] = 1; break;
      case 'Y':
        x[i] = 1;
        z[i] = 1;
        phase += 1;  // Y = i XZ
        break;
      default:
        throw Error(ErrorKind::Domain,
                    std::string("invalid Pauli letter '") + letters[i] + "'");
    }
  }
  return PauliWord(spec, std::move(x), std::move(z), phase);
}

cplx PauliWord::phase() const { return root_of_unity(phase_, spec_.d); }

bool PauliWord::is_scalar() const {
  for (std::uint32_t i = 0; i < spec_.n; ++i) {
    if (key_.x[i] != 0 || key_.z[i] != 0) return false;
  }
  return true;
}

bool PauliWord::is_identity() const { return phase_ == 0 && is_scalar(); }

std::uint32_t PauliWord::support_weight() const {
  std::uint32_t w = 0;
  for (std::uint32_t i = 0; i < spec_.n; ++i) w += (key_.x[i] != 0 || key_.z[i] != 0);
  return w;
}

std::uint32_t PauliWord::letter_weight() const {
  std::uint32_t w = 0;
  for (std::uint32_t i = 0; i < spec_.n; ++i) w += (key_.x[i] != 0) + (key_.z[i] != 0);
  return w;
}

PauliWord PauliWord::adjoint() const {
  // (w^p X^x Z^z)* = w^-p Z^-z X^-x = w^-p w_d^{-x.z} X^-x Z^-z
  const std::uint32_t d = spec_.d;
  Exponents x(spec_.n), z(spec_.n);
  std::uint64_t cross = 0;
  for (std::uint32_t i = 0; i < spec_.n; ++i) {
    x[i] = (d - key_.x[i]) % d;
    z[i] = (d - key_.z[i]) % d;
    cross = (cross + static_cast<std::uint64_t>(key_.x[i]) * key_.z[i]) % d;
  }
  return PauliWord(spec_, std::move(x), std::move(z),
                   -static_cast<std::int64_t>(phase_) - 2 * static_cast<std::int64_t>(cross));
}

PauliWord PauliWord::with_phase(std::int64_t phase_exp) const {
  PauliWord w = *this;
  w.phase_ = mod(phase_exp, 2 * spec_.d);
  return w;
}

std::string PauliWord::letters() const {
  if (spec_.d != 2) throw Error(ErrorKind::UnsupportedInput, "letters() requires d = 2");
  std::string out(spec_.n, 'I');
  for (std::uint32_t i = 0; i < spec_.n; ++i) {
    const bool x = key_.x[i] != 0, z = key_.z[i] != 0;
    out[i] = x && z ? 'Y' : x ? 'X' : z ? 'Z' : 'I';
  }
  return out;
}

PauliWord word_mul(const PauliWord &a, const PauliWord &b) {
  require_same(a.spec(), b.spec());
  const AlgebraSpec &spec = a.spec();
  const std::uint32_t d = spec.d;
  Exponents x(spec.n), z(spec.n);
  // X Z = w_d Z X, so Z^{a.z} X^{b.x} = w_d^{-a.z b.x} X^{b.x} Z^{a.z}.
  std::uint64_t cross = 0;
  for (std::uint32_t i = 0; i < spec.n; ++i) {
    x[i] = (a.x()[i] + b.x()[i]) % d;
    z[i] = (a.z()[i] + b.z()[i]) % d;
    cross = (cross + static_cast<std::uint64_t>(a.z()[i]) * b.x()[i]) % d;
  }
  const std::int64_t phase = static_cast<std::int64_t>(a.phase_exp()) + b.phase_exp() -
                             2 * static_cast<std::int64_t>(cross);
  return PauliWord(spec, std::move(x), std::move(z), phase);
}

PauliWord word_group_commutator(const PauliWord &a, const PauliWord &b) {
  return word_mul(word_mul(word_mul(a, b), a.adjoint()), b.adjoint());
}

std::uint32_t commutation_phase(const PauliWord &a, const PauliWord &b) {
  return word_group_commutator(a, b).phase_exp();
}

OperatorSum::OperatorSum(AlgebraSpec spec) : spec_(spec) {}

OperatorSum::OperatorSum(const PauliWord &word, cplx coeff) : spec_(word.spec()) {
  add_term(word.key(), coeff * word.phase());
}

OperatorSum OperatorSum::identity(AlgebraSpec spec, cplx coeff) {
  return OperatorSum(PauliWord(spec), coeff);
}

cplx OperatorSum::coeff(const WordKey &key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? cplx{0.0} : it->second;
}

void OperatorSum::add_term(const WordKey &key, cplx coeff) {
  if (key.x.size() != spec_.n || key.z.size() != spec_.n) {
    throw Error(ErrorKind::SpecMismatch, "word length does not match algebra");
  }
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < tol::kDrop) terms_.erase(it);
}

std::optional<std::pair<PauliWord, cplx>> OperatorSum::single_term() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto &[key, c] = *terms_.begin();
  return std::make_pair(word_of(spec_, key), c);
}

OperatorSum OperatorSum::adjoint() const {
  OperatorSum out(spec_);
  for (const auto &[key, c] : terms_) {
    const PauliWord adj = word_of(spec_, key).adjoint();
    out.add_term(adj.key(), std::conj(c) * adj.phase());
  }
  return out;
}

double OperatorSum::distance(const OperatorSum &other) const {
  require_same(spec_, other.spec_);
  double worst = 0.0;
  for (const auto &[key, c] : terms_) worst = std::max(worst, std::abs(c - other.coeff(key)));
  for (const auto &[key, c] : other.terms_) {
    if (!terms_.count(key)) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

OperatorSum &OperatorSum::operator+=(const OperatorSum &o) {
  require_same(spec_, o.spec_);
  for (const auto &[key, c] : o.terms_) add_term(key, c);
  return *this;
}

OperatorSum &OperatorSum::operator-=(const OperatorSum &o) {
  require_same(spec_, o.spec_);
  for (const auto &[key, c] : o.terms_) add_term(key, -c);
  return *this;
}

OperatorSum &OperatorSum::operator*=(cplx s) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) < tol::kDrop) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

OperatorSum operator*(const OperatorSum &a, const OperatorSum &b) {
  require_same(a.spec_, b.spec_);
  OperatorSum out(a.spec_);
  for (const auto &[ka, ca] : a.terms_) {
    const PauliWord wa = word_of(a.spec_, ka);
    for (const auto &[kb, cb] : b.terms_) {
      const PauliWord p = word_mul(wa, word_of(b.spec_, kb));
      out.add_term(p.key(), ca * cb * p.phase());
    }
  }
  return out;
}

std::string OperatorSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto &[key, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string label;
    cplx coeff = c;
    if (spec_.d == 2) {
      for (std::uint32_t i = 0; i < spec_.n; ++i) {
        const bool x = key.x[i] != 0, z = key.z[i] != 0;
        if (x && z) coeff *= cplx{0.0, -1.0};  // XZ = -iY
        label += x && z ? 'Y' : x ? 'X' : z ? 'Z' : 'I';
      }
    } else {
      for (std::uint32_t i = 0; i < spec_.n; ++i) {
        if (i) label += '.';
        if (key.x[i] == 0 && key.z[i] == 0) label += 'I';
        if (key.x[i]) label += "X^" + std::to_string(key.x[i]);
        if (key.z[i]) label += "Z^" + std::to_string(key.z[i]);
      }
    }
    out += format_complex(coeff) + "*" + label;
  }
  return out;
}

OperatorSum op_combine(OpMode mode, const OperatorSum &a, const OperatorSum &b) {
  switch (mode) {
    case OpMode::Add: return a + b;
    case OpMode::Mul: return a * b;
    case OpMode::Adjoint: return a.adjoint();
    case OpMode::Scale: break;
  }
  throw Error(ErrorKind::UnsupportedInput, "scale takes a scalar operand");
}

OperatorSum op_combine(OpMode mode, const OperatorSum &a, cplx scalar) {
  switch (mode) {
    case OpMode::Scale: return scalar * a;
    case OpMode::Adjoint: return a.adjoint();
    default: break;
  }
  throw Error(ErrorKind::UnsupportedInput, "add/mul take an operator operand");
}

OperatorSum bracket(BracketKind kind, const OperatorSum &a, const OperatorSum &b) {
  switch (kind) {
    case BracketKind::Commutator: return a * b - b * a;
    case BracketKind::Anticommutator: return a * b + b * a;
    case BracketKind::Jordan: return 0.5 * (a * b + b * a);
    case BracketKind::Multiplicative: break;
  }
  const auto ta = a.single_term();
  const auto tb = b.single_term();
  if (!ta || !tb) {
    throw Error(ErrorKind::UnsupportedInput,
                "multiplicative commutator needs single-word operands");
  }
  // Scalar prefactors cancel in a b a^-1 b^-1.
  return OperatorSum(word_group_commutator(ta->first, tb->first));
}

OperatorSum sigma_of_vector(const std::array<cplx, 3> &v, AlgebraSpec spec) {
  if (spec.d != 2 || spec.n != 1) {
    throw Error(ErrorKind::SpecMismatch, "sigma(v) is defined on a single qubit");
  }
  OperatorSum out(spec);
  out.add_term(PauliWord::x_at(spec, 0).key(), v[0]);
  out.add_term(PauliWord::from_letters("Y").key(), v[1] * cplx{0.0, 1.0});
  out.add_term(PauliWord::z_at(spec, 0).key(), v[2]);
  return out;
}

OperatorSum power(const OperatorSum &a, std::uint64_t k) {
  OperatorSum result = OperatorSum::identity(a.spec());
  OperatorSum base = a;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

OperatorSum tensor(const OperatorSum &a, const OperatorSum &b) {
  if (a.spec().d != b.spec().d) {
    throw Error(ErrorKind::SpecMismatch, "tensor factors must share local dimension");
  }
  const AlgebraSpec spec(a.spec().d, a.spec().n + b.spec().n);
  OperatorSum out(spec);
  for (const auto &[ka, ca] : a.terms()) {
    for (const auto &[kb, cb] : b.terms()) {
      WordKey key{ka.x, ka.z};
      key.x.insert(key.x.end(), kb.x.begin(), kb.x.end());
      key.z.insert(key.z.end(), kb.z.begin(), kb.z.end());
      out.add_term(key, ca * cb);
    }
  }
  return out;
}

DenseOperator to_dense(const PauliWord &w) {
  const AlgebraSpec &spec = w.spec();
  const auto dim = spec.dense_dim();
  if (!dim) {
    throw Error(ErrorKind::DimensionOverflow,
                "d^n exceeds the dense limit of " + std::to_string(tol::kMaxDenseDim));
  }
  const std::uint32_t d = spec.d;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(*dim), static_cast<Eigen::Index>(*dim));
  const cplx global = w.phase();
  std::vector<std::uint32_t> digits(spec.n);
  for (std::size_t col = 0; col < *dim; ++col) {
    std::size_t rest = col;
    for (std::uint32_t s = spec.n; s-- > 0;) {
      digits[s] = static_cast<std::uint32_t>(rest % d);
      rest /= d;
    }
    // Z acts first: w_d^{z k}, then X shifts k -> k - x.
    std::uint64_t zphase = 0;
    std::size_t row = 0;
    for (std::uint32_t s = 0; s < spec.n; ++s) {
      zphase = (zphase + static_cast<std::uint64_t>(w.z()[s]) * digits[s]) % d;
      row = row * d + (digits[s] + d - w.x()[s]) % d;
    }
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
        global * root_of_unity(static_cast<std::uint32_t>(2 * zphase), d);
  }
  return DenseOperator(std::move(m));
}

DenseOperator to_dense(const OperatorSum &a) {
  const auto dim = a.spec().dense_dim();
  if (!dim) {
    throw Error(ErrorKind::DimensionOverflow,
                "d^n exceeds the dense limit of " + std::to_string(tol::kMaxDenseDim));
  }
  DenseOperator out(*dim);
  for (const auto &[key, c] : a.terms()) out += c * to_dense(word_of(a.spec(), key));
  return out;
}

std::vector<PauliWord> all_words(AlgebraSpec spec) {
  const auto dim = spec.dense_dim();
  if (!dim || *dim > 64) {
    throw Error(ErrorKind::DimensionOverflow, "word enumeration limited to d^n <= 64");
  }
  const std::size_t count = *dim * *dim;
  std::vector<PauliWord> out;
  out.reserve(count);
  Exponents digits(2 * spec.n, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (std::size_t s = 2 * spec.n; s-- > 0;) {
      digits[s] = static_cast<std::uint32_t>(rest % spec.d);
      rest /= spec.d;
    }
    // Site-major: (x_1, z_1, x_2, z_2, ...).
    Exponents x(spec.n), z(spec.n);
    for (std::uint32_t s = 0; s < spec.n; ++s) {
      x[s] = digits[2 * s];
      z[s] = digits[2 * s + 1];
    }
    out.emplace_back(spec, std::move(x), std::move(z));
  }
  return out;
}

}  // namespace opalg
