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


#include "opalg/stabilizer_qec.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <deque>
#include <map>
#include <numbers>
#include <numeric>

#include "opalg/errors.hpp"
#include "opalg/format.hpp"
#include "opalg/kernels.hpp"
#include "opalg/tolerances.hpp"

namespace opalg {

namespace {

std::string word_label(const PauliWord &w) {
  if (w.spec().d == 2) return w.letters();
  std::string s;
  for (std::size_t k = 0; k < w.x().size(); ++k)
    s += "X" + std::to_string(w.x()[k]) + "Z" + std::to_string(w.z()[k]) + (k + 1 < w.x().size() ? "," : "");
  return s;
}

bool word_less(const PauliWord &a, const PauliWord &b) {
  if (a.spec().d == 2) return a.letters() < b.letters();
  return a.key() < b.key();
}

}  // namespace

std::optional<std::size_t> StabilizerGroup::find(const WordKey &key) const {
  for (std::size_t k = 0; k < elements_.size(); ++k)
    if (elements_[k].key() == key) return k;
  return std::nullopt;
}

StabilizerGroup group_generate(AlgebraSpec spec, const std::vector<PauliWord> &generators) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].spec() != spec)
      throw Error(ErrorKind::SpecMismatch, "generator " + std::to_string(i) + " has a different algebra spec");
    if (generators[i].is_scalar() && generators[i].phase_exp() != 0)
      throw Error(ErrorKind::InconsistentPhase, "generator " + std::to_string(i) + " is a nontrivial scalar");
    for (std::size_t j = 0; j < i; ++j)
      if (commutation_phase(generators[j], generators[i]) != 0)
        throw Error(ErrorKind::NonCommutingGenerators,
                    "generators " + std::to_string(j) + " and " + std::to_string(i) + " do not commute");
  }
  StabilizerGroup g;
  g.spec_ = spec;
  g.generators_ = generators;
  std::map<WordKey, std::size_t> index;
  g.elements_.push_back(PauliWord(spec));
  g.powers_.emplace_back(generators.size(), 0);
  index.emplace(g.elements_.front().key(), 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t e = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < generators.size(); ++i) {
      PauliWord p = word_mul(g.elements_[e], generators[i]);
      auto it = index.find(p.key());
      if (it != index.end()) {
        if (g.elements_[it->second].phase_exp() != p.phase_exp())
          throw Error(ErrorKind::InconsistentPhase,
                      "group contains a nontrivial scalar multiple of " + word_label(p));
        continue;
      }
      if (g.elements_.size() >= tol::kMaxGroupOrder)
        throw Error(ErrorKind::DimensionOverflow,
                    "group order exceeds " + std::to_string(tol::kMaxGroupOrder));
      std::vector<std::uint32_t> pw = g.powers_[e];
      ++pw[i];
      index.emplace(p.key(), g.elements_.size());
      queue.push_back(g.elements_.size());
      g.elements_.push_back(std::move(p));
      g.powers_.push_back(std::move(pw));
    }
  }
  return g;
}

StabilizerGroup group_generate(const std::vector<PauliWord> &generators) {
  if (generators.empty()) throw Error(ErrorKind::Domain, "no generators given; pass an algebra spec");
  return group_generate(generators.front().spec(), generators);
}

DenseOperator code_projector(const StabilizerGroup &g) {
  if (!g.spec().dense_dim()) throw Error(ErrorKind::DimensionOverflow, "code is too large for dense evaluation");
  const auto dim = static_cast<Eigen::Index>(*g.spec().dense_dim());
  Matrix p = Matrix::Zero(dim, dim);
  for (const PauliWord &s : g.elements()) p += to_dense(s).matrix();
  p /= static_cast<double>(g.order());
  return DenseOperator(0.5 * (p + p.adjoint()));
}

std::vector<cplx> StabilizerCharacter::values() const {
  std::vector<cplx> out;
  for (std::uint32_t k : phase_exps) out.push_back(PauliWord(AlgebraSpec{d, 1}, {0}, {0}, k).phase());
  return out;
}

bool StabilizerCharacter::is_trivial() const {
  return std::all_of(phase_exps.begin(), phase_exps.end(), [](std::uint32_t k) { return k == 0; });
}

std::uint32_t StabilizerCharacter::evaluate(const std::vector<std::uint32_t> &powers) const {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < powers.size() && i < phase_exps.size(); ++i)
    acc += static_cast<std::uint64_t>(powers[i]) * phase_exps[i];
  return static_cast<std::uint32_t>(acc % (2 * d));
}

std::vector<std::uint32_t> character_row(const PauliWord &e, const std::vector<PauliWord> &words) {
  std::vector<std::uint32_t> out;
  for (const PauliWord &s : words) out.push_back(word_group_commutator(e, s).phase_exp());
  return out;
}

namespace {

void check_multiplicative(const StabilizerCharacter &chi, const StabilizerGroup &g,
                          const std::vector<std::uint32_t> &direct) {
  for (std::size_t j = 0; j < g.order(); ++j)
    if (chi.evaluate(g.powers()[j]) != direct[j])
      throw Error(ErrorKind::InconsistentPhase, "character is not multiplicative on the group");
}

}  // namespace

StabilizerCharacter character_of(const PauliWord &e, const StabilizerGroup &g) {
  if (e.spec() != g.spec()) throw Error(ErrorKind::SpecMismatch, "error word and group specs differ");
  StabilizerCharacter chi{g.spec().d, character_row(e, g.generators())};
  check_multiplicative(chi, g, character_row(e, g.elements()));
  return chi;
}

StabilizerCharacter character_of(const OperatorSum &e, const StabilizerGroup &g) {
  if (e.spec() != g.spec()) throw Error(ErrorKind::SpecMismatch, "error operator and group specs differ");
  if (auto single = e.single_term()) return character_of(single->first, g);
  if (e.is_zero()) throw Error(ErrorKind::NotProjectivelyCommuting, "zero operator has no character");
  const std::uint32_t d = g.spec().d;
  auto exponent_for = [&](const PauliWord &s) -> std::uint32_t {
    const OperatorSum so(s);
    const OperatorSum es = e * so, se = so * e;
    const auto &first = *se.terms().begin();
    const cplx c = es.coeff(first.first) / first.second;
    const double turns = std::arg(c) * static_cast<double>(d) / std::numbers::pi;
    const double k = std::round(turns);
    if (std::abs(std::abs(c) - 1.0) > 1e-10 || std::abs(turns - k) > 1e-8 || es.distance(c * se) > 1e-10)
      throw Error(ErrorKind::NotProjectivelyCommuting,
                  "operator does not projectively commute with " + word_label(s));
    return static_cast<std::uint32_t>((static_cast<std::int64_t>(k) % (2 * d) + 2 * d) % (2 * d));
  };
  StabilizerCharacter chi{d, {}};
  for (const PauliWord &s : g.generators()) chi.phase_exps.push_back(exponent_for(s));
  std::vector<std::uint32_t> direct;
  for (const PauliWord &s : g.elements()) direct.push_back(exponent_for(s));
  check_multiplicative(chi, g, direct);
  return chi;
}

std::vector<SyndromeClass> syndrome_classes(const std::vector<PauliWord> &errors, const StabilizerGroup &g) {
  std::map<StabilizerCharacter, std::vector<std::size_t>> by_char;
  for (std::size_t k = 0; k < errors.size(); ++k) by_char[character_of(errors[k], g)].push_back(k);
  std::vector<SyndromeClass> out;
  for (auto &[chi, members] : by_char) {
    std::size_t rep = members.front();
    for (std::size_t m : members)
      if (word_less(errors[m], errors[rep])) rep = m;
    out.push_back(SyndromeClass{chi, members, rep});
  }
  return out;
}

bool alphabet_in_centralizer(const StabilizerCode &code) {
  for (const OperatorSum &a : code.logical_alphabet)
    for (const PauliWord &s : code.group.generators()) {
      const OperatorSum so(s);
      if (!(a * so).approx_equal(so * a, 1e-12)) return false;
    }
  return true;
}

StabilizerCode make_code(std::string name, AlgebraSpec spec, const std::vector<PauliWord> &generators,
                         std::vector<OperatorSum> alphabet, std::optional<std::uint32_t> distance) {
  StabilizerGroup group = group_generate(spec, generators);
  DenseOperator projector = code_projector(group);
  const double rank = projector.trace().real();
  std::uint32_t m = 0;
  double size = 1.0;
  while (size < rank - 0.5) {
    size *= spec.d;
    ++m;
  }
  if (std::abs(size - rank) > 1e-8)
    throw Error(ErrorKind::Domain, "code space dimension " + format_double(rank) + " is not a power of d");
  for (const OperatorSum &a : alphabet)
    if (a.spec() != spec) throw Error(ErrorKind::SpecMismatch, "logical alphabet spec differs from the code");
  StabilizerCode code{std::move(name), std::move(group), std::move(projector), std::move(alphabet),
                      spec.n, m, distance, generators};
  if (!alphabet_in_centralizer(code))
    throw Error(ErrorKind::Domain, "logical alphabet does not commute with the stabilizers");
  return code;
}

std::vector<PauliWord> cyclic_shifts(const PauliWord &w, std::size_t count) {
  std::vector<PauliWord> out{w};
  const std::size_t n = w.x().size();
  for (std::size_t k = 1; k < count; ++k) {
    const PauliWord &prev = out.back();
    Exponents x(n), z(n);
    for (std::size_t s = 0; s < n; ++s) {
      x[(s + 1) % n] = prev.x()[s];
      z[(s + 1) % n] = prev.z()[s];
    }
    out.emplace_back(w.spec(), x, z, w.phase_exp());
  }
  return out;
}

std::vector<std::string> code_names() { return {"rep2", "rep3", "five_qubit"}; }

namespace {

OperatorSum repeated_letter(char letter, std::uint32_t n) {
  return OperatorSum(PauliWord::from_letters(std::string(n, letter)));
}

}  // namespace

StabilizerCode build_code(const std::string &name) {
  auto alphabet = [](std::uint32_t n) {
    return std::vector<OperatorSum>{repeated_letter('X', n), repeated_letter('Z', n)};
  };
  if (name == "rep2")
    return make_code(name, AlgebraSpec{2, 2}, {PauliWord::from_letters("YY")}, alphabet(2), 2);
  if (name == "rep3")
    return make_code(name, AlgebraSpec{2, 3}, {PauliWord::from_letters("YYI"), PauliWord::from_letters("IYY")},
                     alphabet(3));
  if (name == "five_qubit") {
    const auto shifts = cyclic_shifts(PauliWord::from_letters("IXZZX"), 5);
    StabilizerCode code = make_code(name, AlgebraSpec{2, 5}, {shifts.begin(), shifts.begin() + 4}, alphabet(5), 3);
    code.check_words = shifts;
    return code;
  }
  throw Error(ErrorKind::UnsupportedInput, "unknown code '" + name + "' (expected rep2, rep3 or five_qubit)");
}

std::vector<PauliWord> weight_one_errors(AlgebraSpec spec) {
  std::vector<PauliWord> out{PauliWord(spec)};
  for (std::uint32_t site = 0; site < spec.n; ++site) {
    if (spec.d == 2) {
      for (char c : {'X', 'Y', 'Z'}) {
        std::string s(spec.n, 'I');
        s[site] = c;
        out.push_back(PauliWord::from_letters(s));
      }
      continue;
    }
    for (std::uint32_t x = 0; x < spec.d; ++x)
      for (std::uint32_t z = 0; z < spec.d; ++z) {
        if (x == 0 && z == 0) continue;
        Exponents xs(spec.n, 0), zs(spec.n, 0);
        xs[site] = x;
        zs[site] = z;
        out.emplace_back(spec, xs, zs);
      }
  }
  return out;
}

std::vector<DenseOperator> dense_errors(const std::vector<PauliWord> &errors) {
  std::vector<DenseOperator> out;
  for (const PauliWord &e : errors) out.push_back(to_dense(e));
  return out;
}

KlReport kl_check(const StabilizerCode &code, const std::vector<DenseOperator> &errors) {
  const Matrix &p = code.projector.matrix();
  std::vector<Matrix> ops;
  for (const DenseOperator &e : errors) {
    if (e.dim() != code.projector.dim()) throw Error(ErrorKind::SpecMismatch, "error dimension differs from the code");
    ops.push_back(e.matrix());
  }
  const auto count = static_cast<Eigen::Index>(ops.size());
  const std::vector<Matrix> blocks = kernels::parallel::sandwich(p, ops);
  const double rank = p.trace().real();
  KlReport r;
  r.nu = Matrix::Zero(count, count);
  for (Eigen::Index k = 0; k < count; ++k)
    for (Eigen::Index q = 0; q < count; ++q) {
      const Matrix &b = blocks[static_cast<std::size_t>(k * count + q)];
      const cplx nu = b.trace() / rank;
      r.nu(k, q) = nu;
      r.max_scalar_residual = std::max(r.max_scalar_residual, (b - nu * p).cwiseAbs().maxCoeff());
    }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (r.nu + r.nu.adjoint()), Eigen::EigenvaluesOnly);
  for (Eigen::Index k = 0; k < count; ++k) r.nu_eigenvalues.push_back(es.eigenvalues()(k));
  const bool positive = count == 0 || es.eigenvalues()(0) >= -tol::kPositive;
  r.pass = r.max_scalar_residual <= 1e-8 && positive;

  std::vector<std::size_t> parent(ops.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (Eigen::Index k = 0; k < count; ++k)
    for (Eigen::Index q = 0; q < k; ++q)
      if (std::abs(r.nu(k, q)) > 1e-8) parent[root(static_cast<std::size_t>(k))] = root(static_cast<std::size_t>(q));
  std::map<std::size_t, std::size_t> label;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    auto [it, fresh] = label.emplace(root(k), label.size());
    r.syndrome_map.push_back(it->second);
  }
  return r;
}

KrausSet recovery_map(const StabilizerCode &code, const std::vector<DenseOperator> &errors) {
  const KlReport kl = kl_check(code, errors);
  if (!kl.pass) throw Error(ErrorKind::Domain, "Knill-Laflamme conditions fail; no recovery exists");
  const Matrix &p = code.projector.matrix();
  const auto dim = p.rows();
  const auto rank = static_cast<Eigen::Index>(std::llround(p.trace().real()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (kl.nu + kl.nu.adjoint()));
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Matrix> ops;
  std::vector<std::string> labels;
  Matrix covered = Matrix::Zero(dim, dim);
  for (Eigen::Index j = es.eigenvalues().size(); j-- > 0;) {
    if (es.eigenvalues()(j) <= 1e-10 * scale) continue;
    Matrix f = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < errors.size(); ++k)
      f += es.eigenvectors()(static_cast<Eigen::Index>(k), j) * errors[k].matrix();
    Eigen::JacobiSVD<Matrix> svd(f * p, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix w = svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
    covered += w * w.adjoint();
    ops.push_back(w.adjoint());
    labels.push_back("syndrome" + std::to_string(ops.size() - 1));
  }
  Matrix rest = Matrix::Identity(dim, dim) - covered;
  rest = 0.5 * (rest + rest.adjoint());
  if (rest.cwiseAbs().maxCoeff() > 1e-10) {
    ops.push_back(rest);
    labels.push_back("complement");
  }
  return KrausSet(std::move(ops), std::move(labels));
}

std::vector<OperatorSum> default_alphabet(std::uint32_t d) {
  const AlgebraSpec one{d, 1};
  return {OperatorSum(PauliWord::x_at(one, 0)), OperatorSum(PauliWord::z_at(one, 0))};
}

OperatorSum coherent_repetition(const OperatorSum &l, std::uint32_t n, const std::vector<OperatorSum> &alphabet) {
  if (l.spec().n != 1) throw Error(ErrorKind::Domain, "coherent repetition expects a single-site operator");
  if (n == 0) throw Error(ErrorKind::Domain, "repetition count must be positive");
  for (const auto &a : alphabet)
    if (a.spec() != l.spec()) throw Error(ErrorKind::SpecMismatch, "alphabet spec differs from the operator");
  const auto d = static_cast<Eigen::Index>(l.spec().d);
  Matrix cols(d * d, static_cast<Eigen::Index>(alphabet.size()));
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    cols.col(static_cast<Eigen::Index>(i)) = kernels::vec(to_dense(alphabet[i]).matrix());
  const Vector target = kernels::vec(to_dense(l).matrix());
  const Vector lambda = cols.colPivHouseholderQr().solve(target);
  if ((cols * lambda - target).norm() > 1e-10 * std::max(1.0, target.norm()))
    throw Error(ErrorKind::Domain, "operator is not in the span of the logical alphabet");
  OperatorSum out(AlgebraSpec{l.spec().d, n});
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    cplx c = lambda(static_cast<Eigen::Index>(i));
    if (std::abs(c.real()) < tol::kDrop) c.real(0.0);
    if (std::abs(c.imag()) < tol::kDrop) c.imag(0.0);
    OperatorSum rep = alphabet[i];
    for (std::uint32_t k = 1; k < n; ++k) rep = tensor(rep, alphabet[i]);
    out += c * rep;
  }
  return out;
}

OperatorSum coherent_repetition(const OperatorSum &l, std::uint32_t n) {
  return coherent_repetition(l, n, default_alphabet(l.spec().d));
}

DistanceResult distance_search(const StabilizerCode &code, std::uint32_t max_weight) {
  const AlgebraSpec spec = code.group.spec();
  const std::uint32_t slots = 2 * spec.n;
  double total = 1.0;
  for (std::uint32_t k = 0; k < slots; ++k) total *= spec.d;
  if (total > static_cast<double>(1u << 22))
    throw Error(ErrorKind::DimensionOverflow, "distance search space exceeds 2^22 words");
  DistanceResult r;
  r.searched_up_to = std::min(max_weight, slots);
  const Matrix &p = code.projector.matrix();
  std::vector<std::uint32_t> digits(slots, 0);
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(total); ++idx) {
    std::uint64_t v = idx;
    std::uint32_t weight = 0;
    for (std::uint32_t k = slots; k-- > 0;) {
      digits[k] = static_cast<std::uint32_t>(v % spec.d);
      v /= spec.d;
      weight += digits[k] != 0;
    }
    if (weight == 0 || weight > r.searched_up_to || (r.distance && weight >= *r.distance)) continue;
    Exponents x(spec.n), z(spec.n);
    for (std::uint32_t s = 0; s < spec.n; ++s) {
      x[s] = digits[2 * s];
      z[s] = digits[2 * s + 1];
    }
    const PauliWord w(spec, x, z);
    if (code.group.find(w.key())) continue;
    bool commutes = true;
    for (const PauliWord &s : code.group.generators())
      if (commutation_phase(w, s) != 0) {
        commutes = false;
        break;
      }
    if (!commutes) continue;
    // Nontrivial on the code space: P W P is not a multiple of P.
    const Matrix pwp = p * to_dense(w).matrix() * p;
    const cplx c = pwp.trace() / p.trace();
    if ((pwp - c * p).cwiseAbs().maxCoeff() <= 1e-10) continue;
    r.distance = weight;
    r.witness = w;
  }
  return r;
}

}  // namespace opalg
