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
#include <optional>
#include <string>
#include <vector>

#include "opalg/channels.hpp"
#include "opalg/dense.hpp"
#include "opalg/pauli_algebra.hpp"

namespace opalg {

/// Abelian group of Pauli words without nontrivial scalars.
class StabilizerGroup {
 public:
  const AlgebraSpec &spec() const { return spec_; }
  const std::vector<PauliWord> &generators() const { return generators_; }
  const std::vector<PauliWord> &elements() const { return elements_; }
  /// Exponent of each generator in elements()[i].
  const std::vector<std::vector<std::uint32_t>> &powers() const { return powers_; }
  std::size_t order() const { return elements_.size(); }

  /// Index of the element with the same canonical word, ignoring phase.
  std::optional<std::size_t> find(const WordKey &key) const;

 private:
  friend StabilizerGroup group_generate(AlgebraSpec, const std::vector<PauliWord> &);
  AlgebraSpec spec_;
  std::vector<PauliWord> generators_;
  std::vector<PauliWord> elements_;
  std::vector<std::vector<std::uint32_t>> powers_;
};

/// Closure enumeration; throws NonCommutingGenerators or InconsistentPhase.
StabilizerGroup group_generate(AlgebraSpec spec, const std::vector<PauliWord> &generators);
StabilizerGroup group_generate(const std::vector<PauliWord> &generators);

/// (1/|S|) sum_S S.
DenseOperator code_projector(const StabilizerGroup &g);

/// chi_E(S) = E S E^-1 S^-1 per generator, as exponents of omega_{2d}.
struct StabilizerCharacter {
  std::uint32_t d = 2;
  std::vector<std::uint32_t> phase_exps;

  std::vector<cplx> values() const;
  bool is_trivial() const;
  /// chi on an element given by its generator powers.
  std::uint32_t evaluate(const std::vector<std::uint32_t> &powers) const;

  friend bool operator==(const StabilizerCharacter &, const StabilizerCharacter &) = default;
  friend auto operator<=>(const StabilizerCharacter &, const StabilizerCharacter &) = default;
};

StabilizerCharacter character_of(const PauliWord &e, const StabilizerGroup &g);
/// E S E^-1 S^-1 exponents for an arbitrary list of words.
std::vector<std::uint32_t> character_row(const PauliWord &e, const std::vector<PauliWord> &words);
/// Throws NotProjectivelyCommuting unless E S = c S E with c a phase for each generator.
StabilizerCharacter character_of(const OperatorSum &e, const StabilizerGroup &g);

struct SyndromeClass {
  StabilizerCharacter character;
  std::vector<std::size_t> members;
  /// Lexicographically least member word.
  std::size_t representative = 0;
};

/// Errors grouped by character; classes ordered by character exponents.
std::vector<SyndromeClass> syndrome_classes(const std::vector<PauliWord> &errors, const StabilizerGroup &g);

struct StabilizerCode {
  std::string name;
  StabilizerGroup group;
  DenseOperator projector;
  std::vector<OperatorSum> logical_alphabet;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::optional<std::uint32_t> distance;
  /// Words the character table is reported on (the generators unless a
  /// code lists more, such as the fifth cyclic shift of the five-qubit code).
  std::vector<PauliWord> check_words;
};

/// Validates the group, builds the projector and derives m from its rank.
StabilizerCode make_code(std::string name, AlgebraSpec spec, const std::vector<PauliWord> &generators,
                         std::vector<OperatorSum> alphabet, std::optional<std::uint32_t> distance = {});
/// Right cyclic shifts T^k w for k = 0..count-1.
std::vector<PauliWord> cyclic_shifts(const PauliWord &w, std::size_t count);
/// rep2, rep3 or five_qubit.
StabilizerCode build_code(const std::string &name);
std::vector<std::string> code_names();

/// Every alphabet element commutes with every generator.
bool alphabet_in_centralizer(const StabilizerCode &code);

/// The identity plus every single-site non-identity word.
std::vector<PauliWord> weight_one_errors(AlgebraSpec spec);

struct KlReport {
  bool pass = false;
  /// nu_kq with P E_k* E_q P = nu_kq P.
  Matrix nu;
  std::vector<double> nu_eigenvalues;
  /// Largest max-abs residual of P E_k* E_q P - nu_kq P.
  double max_scalar_residual = 0.0;
  /// Connected classes of errors linked by nonzero nu_kq.
  std::vector<std::size_t> syndrome_map;
};

KlReport kl_check(const StabilizerCode &code, const std::vector<DenseOperator> &errors);
std::vector<DenseOperator> dense_errors(const std::vector<PauliWord> &errors);

/// Recovery from the polar isometries of the nu-diagonalized errors, completed
/// to a channel by the projector onto the complement of their ranges.
KrausSet recovery_map(const StabilizerCode &code, const std::vector<DenseOperator> &errors);

/// sum_i l_i L_i^{(x) n} for L = sum_i l_i L_i over the single-site alphabet.
OperatorSum coherent_repetition(const OperatorSum &l, std::uint32_t n,
                                const std::vector<OperatorSum> &alphabet);
/// Alphabet {X, Z} on one site of local dimension spec.d.
std::vector<OperatorSum> default_alphabet(std::uint32_t d);
OperatorSum coherent_repetition(const OperatorSum &l, std::uint32_t n);

struct DistanceResult {
  /// Unset when no logical word of weight <= searched_up_to exists.
  std::optional<std::uint32_t> distance;
  std::uint32_t searched_up_to = 0;
  std::optional<PauliWord> witness;
};

/// Least letter weight of a word in the centralizer but outside the group.
DistanceResult distance_search(const StabilizerCode &code, std::uint32_t max_weight);

}  // namespace opalg
