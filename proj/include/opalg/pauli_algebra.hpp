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

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opalg/dense.hpp"

namespace opalg {

/// Local dimension d and site count n of a generalized Pauli algebra.
struct AlgebraSpec {
  std::uint32_t d = 2;
  std::uint32_t n = 1;

  AlgebraSpec() = default;
  /// Throws Domain unless d >= 2 and n >= 1.
  AlgebraSpec(std::uint32_t d_, std::uint32_t n_);

  /// d^n, or nullopt when it does not fit the dense backend.
  std::optional<std::size_t> dense_dim() const;

  friend bool operator==(const AlgebraSpec &, const AlgebraSpec &) = default;
};

using Exponents = std::vector<std::uint32_t>;

/// Phase-stripped canonical word X^x Z^z (X before Z on every site).
struct WordKey {
  Exponents x;
  Exponents z;

  friend bool operator==(const WordKey &, const WordKey &) = default;
  friend auto operator<=>(const WordKey &, const WordKey &) = default;
};

/// omega_{2d}^phase * prod_sites X^x Z^z, with omega_{2d} = exp(i pi / d).
class PauliWord {
 public:
  /// Identity word.
  explicit PauliWord(AlgebraSpec spec);
  /// Reduces all exponents to canonical residues.
  PauliWord(AlgebraSpec spec, Exponents x, Exponents z, std::int64_t phase_exp = 0);

  /// Single-site generator on `site` (0-based) of an n-site algebra.
  static PauliWord x_at(AlgebraSpec spec, std::uint32_t site, std::uint32_t power = 1);
  static PauliWord z_at(AlgebraSpec spec, std::uint32_t site, std::uint32_t power = 1);
  /// Parses a d=2 letter string such as "IXZZX" or "YY"; Y becomes i*XZ.
  static PauliWord from_letters(const std::string &letters);

  const AlgebraSpec &spec() const { return spec_; }
  std::uint32_t phase_exp() const { return phase_; }
  const Exponents &x() const { return key_.x; }
  const Exponents &z() const { return key_.z; }
  const WordKey &key() const { return key_; }

  /// omega_{2d}^phase as a complex number (exact for d = 2).
  cplx phase() const;
  bool is_identity() const;
  /// Identity word up to phase.
  bool is_scalar() const;
  /// Number of sites with a non-identity factor.
  std::uint32_t support_weight() const;
  /// Number of nonzero X and Z exponents; Y on a qubit counts twice.
  std::uint32_t letter_weight() const;

  PauliWord adjoint() const;
  PauliWord with_phase(std::int64_t phase_exp) const;

  /// d=2 letter string with the phase dropped ("XZ" on a site reads "Y").
  std::string letters() const;

  friend bool operator==(const PauliWord &, const PauliWord &) = default;

 private:
  AlgebraSpec spec_;
  std::uint32_t phase_ = 0;
  WordKey key_;
};

/// Canonical product; O(n). Throws SpecMismatch.
PauliWord word_mul(const PauliWord &a, const PauliWord &b);

/// a b a^{-1} b^{-1}; always a scalar word for generalized Paulis.
PauliWord word_group_commutator(const PauliWord &a, const PauliWord &b);

/// Exact exponent k such that [a, b]_x = omega_{2d}^k I.
std::uint32_t commutation_phase(const PauliWord &a, const PauliWord &b);

/// Finite complex combination of phase-stripped canonical words.
class OperatorSum {
 public:
  using Terms = std::map<WordKey, cplx>;

  explicit OperatorSum(AlgebraSpec spec);
  explicit OperatorSum(const PauliWord &word, cplx coeff = 1.0);

  static OperatorSum identity(AlgebraSpec spec, cplx coeff = 1.0);

  const AlgebraSpec &spec() const { return spec_; }
  const Terms &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of the canonical word, zero if absent.
  cplx coeff(const WordKey &key) const;

  /// Adds coeff * X^x Z^z, dropping the entry if it falls below kDrop.
  void add_term(const WordKey &key, cplx coeff);

  /// The lone word and its coefficient when the sum has exactly one term.
  std::optional<std::pair<PauliWord, cplx>> single_term() const;

  OperatorSum adjoint() const;
  /// Termwise max |a_k - b_k|.
  double distance(const OperatorSum &other) const;
  bool approx_equal(const OperatorSum &other, double tol) const {
    return distance(other) <= tol;
  }

  OperatorSum &operator+=(const OperatorSum &o);
  OperatorSum &operator-=(const OperatorSum &o);
  OperatorSum &operator*=(cplx s);

  friend OperatorSum operator+(OperatorSum a, const OperatorSum &b) { return a += b; }
  friend OperatorSum operator-(OperatorSum a, const OperatorSum &b) { return a -= b; }
  friend OperatorSum operator*(cplx s, OperatorSum a) { return a *= s; }
  friend OperatorSum operator*(OperatorSum a, cplx s) { return a *= s; }
  friend OperatorSum operator*(const OperatorSum &a, const OperatorSum &b);

  /// Human-readable sum, e.g. "(0.5)*I + (0.5)*Z". d=2 words print as
  /// Pauli letters with Y-phases folded into the coefficient.
  std::string to_string() const;

 private:
  AlgebraSpec spec_;
  Terms terms_;
};

enum class OpMode { Add, Scale, Mul, Adjoint };
/// Dispatches add/mul on two sums; Scale and Adjoint ignore `b`.
OperatorSum op_combine(OpMode mode, const OperatorSum &a, const OperatorSum &b);
OperatorSum op_combine(OpMode mode, const OperatorSum &a, cplx scalar);

enum class BracketKind { Commutator, Anticommutator, Jordan, Multiplicative };
/// Multiplicative requires single-word operands; throws UnsupportedInput.
OperatorSum bracket(BracketKind kind, const OperatorSum &a, const OperatorSum &b);

/// v1 X + v2 Y + v3 Z on a single qubit.
OperatorSum sigma_of_vector(const std::array<cplx, 3> &v, AlgebraSpec spec = {2, 1});

/// Integer power by repeated squaring; A^0 = I.
OperatorSum power(const OperatorSum &a, std::uint64_t k);

/// Tensor product of sums on disjoint site blocks; spec n adds.
OperatorSum tensor(const OperatorSum &a, const OperatorSum &b);

/// Clock-and-shift matrix of a word: X|k> = |k-1>, Z|k> = w^k |k>, so that
/// X Z X^-1 Z^-1 = w_d. Site 0 is the most significant tensor slot. Throws
/// DimensionOverflow.
DenseOperator to_dense(const PauliWord &w);
DenseOperator to_dense(const OperatorSum &a);

/// All d^(2n) phase-free words in canonical order.
std::vector<PauliWord> all_words(AlgebraSpec spec);

}  // namespace opalg
