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


#include "opalg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "CLI11.hpp"
#include "opalg/channels.hpp"
#include "opalg/composite.hpp"
#include "opalg/errors.hpp"
#include "opalg/expr.hpp"
#include "opalg/json_io.hpp"
#include "opalg/measurement.hpp"
#include "opalg/shadows.hpp"
#include "opalg/stabilizer_qec.hpp"
#include "opalg/states.hpp"

namespace opalg {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json numbers(const std::vector<double> &v) {
  Json out = Json::array();
  for (double x : v) out.push_back(clean_number(x));
  return out;
}

Json numbers(const Eigen::VectorXd &v) {
  return numbers(std::vector<double>(v.data(), v.data() + v.size()));
}

Json parse_inline_json(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Parse, std::string("invalid inline JSON: ") + e.what());
  }
}

// Inline JSON when the argument starts with '{', otherwise a file.
Json json_argument(const std::string &arg) {
  if (!arg.empty() && arg.front() == '{') return parse_inline_json(arg);
  return read_json_file(arg);
}

// n when dim == 2^n, otherwise 0.
std::uint32_t qubit_count(std::size_t dim) {
  std::uint32_t n = 0;
  std::size_t p = 1;
  while (p < dim) {
    p *= 2;
    ++n;
  }
  return p == dim ? n : 0;
}

std::vector<std::string> letter_words(std::uint32_t n) {
  std::vector<std::string> out{""};
  for (std::uint32_t k = 0; k < n; ++k) {
    std::vector<std::string> next;
    for (const auto &w : out)
      for (char c : {'I', 'X', 'Y', 'Z'}) next.push_back(w + c);
    out = std::move(next);
  }
  return out;
}

State vector_state(std::initializer_list<cplx> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index k = 0;
  for (cplx a : amps) v(k++) = a;
  return State::from_vector(v.normalized());
}

std::optional<State> builtin_state(const std::string &name) {
  const cplx i{0.0, 1.0};
  if (name == "zero") return State::fiducial(0);
  if (name == "one") return State::fiducial(1);
  if (name == "plus") return vector_state({1.0, 1.0});
  if (name == "minus") return vector_state({1.0, -1.0});
  if (name == "plus_i") return vector_state({1.0, i});
  if (name == "minus_i") return vector_state({1.0, -i});
  if (name == "mixed") return State::maximally_mixed(2);
  if (name == "bell") return bell_state();
  if (name == "ghz") return vector_state({1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
  if (name.rfind("coin:", 0) == 0) {
    const std::string p = name.substr(5);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(p, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != p.size() || p.empty()) throw Error(ErrorKind::Domain, "invalid coin probability '" + p + "'");
    return State::coin(value);
  }
  return std::nullopt;
}

State resolve_state(const std::string &arg) {
  if (auto s = builtin_state(arg)) return *s;
  if (!arg.empty() && arg.front() != '{' && !std::filesystem::exists(arg)) {
    throw Error(ErrorKind::Io, "'" + arg + "' is neither a builtin state nor a readable file");
  }
  return state_from_json(json_argument(arg));
}

DenseOperator resolve_observable(const std::string &arg, std::size_t dim) {
  std::optional<Json> j;
  if (!arg.empty() && arg.front() == '{') {
    j = parse_inline_json(arg);
  } else if (arg.size() > 5 && arg.ends_with(".json")) {
    j = read_json_file(arg);
  }
  DenseOperator obs(1);
  if (j) {
    obs = j->contains("terms") ? to_dense(operator_from_json(*j)) : DenseOperator(matrix_from_json(*j));
  } else {
    const std::uint32_t n = qubit_count(dim);
    if (n == 0) throw Error(ErrorKind::SpecMismatch, "expression observables need a qubit state");
    obs = to_dense(eval_expr(parse_expr(arg), AlgebraSpec(2, n)));
  }
  if (obs.dim() != dim) {
    throw Error(ErrorKind::SpecMismatch, "observable dimension " + std::to_string(obs.dim()) +
                                             " does not match the state dimension " + std::to_string(dim));
  }
  return obs;
}

Json word_expectations(const State &pi) {
  Json out = Json::object();
  const std::uint32_t n = qubit_count(pi.dim());
  if (n == 0 || n > 3) return out;
  for (const auto &w : letter_words(n)) {
    out[w] = clean_number(pi(OperatorSum(PauliWord::from_letters(w))).real());
  }
  return out;
}

Json state_results(const State &pi) {
  Json r = Json::object();
  const Matrix &rho = pi.density().matrix();
  r["dim"] = pi.dim();
  r["density"] = matrix_to_json(rho);
  r["purity"] = clean_number((rho * rho).trace().real());
  r["is_pure"] = is_pure(pi);
  r["eigenvalues"] = numbers(eigenvalues_hermitian(pi.density()));
  if (pi.dim() == 2) {
    const auto b = bloch_vector(pi);
    r["bloch"] = numbers(std::vector<double>(b.begin(), b.end()));
  }
  r["pauli_expectations"] = word_expectations(pi);
  return r;
}

Json gns_results(const State &pi) {
  const GnsSpace space = gns_construct(pi);
  Json r = Json::object();
  r["dim"] = space.dim();
  r["kernel_dim"] = space.kernel().size();
  Json kernel = Json::array();
  for (const auto &k : space.kernel()) kernel.push_back(matrix_to_json(k.matrix()));
  r["kernel"] = std::move(kernel);
  Json action = Json::object();
  const std::uint32_t n = qubit_count(pi.dim());
  for (std::uint32_t site = 0; site < n && n <= 4; ++site) {
    for (char c : {'X', 'Y', 'Z'}) {
      std::string w(n, 'I');
      w[site] = c;
      action[w] = matrix_to_json(space.action(to_dense(PauliWord::from_letters(w))));
    }
  }
  r["action"] = std::move(action);
  r["definite_set_dim"] = definite_set(pi).size();
  return r;
}

Json measure_results(const State &pi, const DenseOperator &obs) {
  const PvmResult res = pvm_measure(pi, obs);
  Json records = Json::array();
  for (const auto &rec : res.records) {
    Json j = Json::object();
    j["outcome"] = clean_number(rec.outcome);
    j["probability"] = clean_number(rec.probability);
    j["post_state"] = rec.post_state ? state_to_json(*rec.post_state) : Json(nullptr);
    records.push_back(std::move(j));
  }
  Json r = Json::object();
  r["records"] = std::move(records);
  r["unobserved"] = state_to_json(res.unobserved);
  r["expectation"] = clean_number(expect(pi, obs).real());
  r["variance"] = clean_number(variance(pi, obs));
  return r;
}

Json channel_results(const std::optional<KrausSet> &kraus, const ChoiMatrix &choi) {
  Json r = Json::object();
  r["dim_in"] = choi.dim_in;
  r["dim_out"] = choi.dim_out;
  r["kraus_count"] = kraus ? Json(kraus->size()) : Json(nullptr);
  r["valid_operation"] = kraus ? Json(validate_operation(*kraus).valid) : Json(nullptr);
  const FactorLayout layout({choi.dim_out, choi.dim_in});
  const DenseOperator reduced = partial_trace(DenseOperator(choi.matrix), layout, {1});
  const double tp_defect = (reduced.matrix() - Matrix::Identity(choi.dim_in, choi.dim_in)).cwiseAbs().maxCoeff();
  const bool tp = tp_defect < 1e-9;
  const bool cp = is_completely_positive(choi);
  r["trace_preserving"] = tp;
  r["cp"] = cp;
  r["min_choi_eigenvalue"] = clean_number(choi_min_eigenvalue(choi));
  const Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (choi.matrix + choi.matrix.adjoint()), Eigen::EigenvaluesOnly);
  r["choi_eigenvalues"] = numbers(es.eigenvalues());
  r["choi"] = matrix_to_json(choi.matrix);
  if (cp && tp) {
    const Dilation dil = stinespring_dilate(kraus ? *kraus : kraus_from_choi(choi));
    Json s = Json::object();
    s["env_dim"] = dil.env_dim;
    const Matrix vv = dil.v.adjoint() * dil.v;
    s["isometry_error"] = clean_number((vv - Matrix::Identity(vv.rows(), vv.cols())).cwiseAbs().maxCoeff());
    r["stinespring"] = std::move(s);
  } else {
    r["stinespring"] = nullptr;
  }
  return r;
}

// Exponents count powers of omega_{2d}.
Json character_values(const std::vector<std::uint32_t> &exps, std::uint32_t d) {
  Json out = Json::array();
  for (std::uint32_t e : exps) {
    if (d == 2) {
      out.push_back(e % 4 == 0 ? 1 : -1);
    } else {
      out.push_back(complex_to_json(std::polar(1.0, std::acos(-1.0) * e / d)));
    }
  }
  return out;
}

std::string word_label(const PauliWord &w) {
  return w.spec().d == 2 ? signed_letters(w) : OperatorSum(w).to_string();
}

Json code_results(const StabilizerCode &code, std::uint32_t max_weight) {
  const AlgebraSpec spec = code.group.spec();
  const std::vector<PauliWord> errors = weight_one_errors(spec);
  const std::vector<DenseOperator> dense = dense_errors(errors);
  const KlReport kl = kl_check(code, dense);

  Json r = Json::object();
  r["code"] = code_to_json(code);
  r["group_order"] = code.group.order();
  r["code_dimension"] = static_cast<std::size_t>(std::llround(code.projector.trace().real()));
  r["logical_qudits"] = code.m;
  Json labels = Json::array();
  for (const auto &e : errors) labels.push_back(word_label(e));
  r["errors"] = labels;
  r["kl_pass"] = kl.pass;
  r["nu"] = matrix_to_json(kl.nu);
  r["nu_eigenvalues"] = numbers(kl.nu_eigenvalues);
  r["max_scalar_residual"] = clean_number(kl.max_scalar_residual);

  Json checks = Json::array();
  for (const auto &s : code.check_words) checks.push_back(word_label(s));
  Json rows = Json::array();
  for (const auto &e : errors) {
    Json row = Json::object();
    row["error"] = word_label(e);
    row["values"] = character_values(character_row(e, code.check_words), spec.d);
    rows.push_back(std::move(row));
  }
  Json table = Json::object();
  table["checks"] = std::move(checks);
  table["rows"] = std::move(rows);
  r["character_table"] = std::move(table);

  Json syndromes = Json::array();
  for (const auto &cls : syndrome_classes(errors, code.group)) {
    Json c = Json::object();
    c["character"] = character_values(cls.character.phase_exps, spec.d);
    Json members = Json::array();
    for (std::size_t k : cls.members) members.push_back(labels[k]);
    c["members"] = std::move(members);
    c["representative"] = labels[cls.representative];
    syndromes.push_back(std::move(c));
  }
  r["syndromes"] = std::move(syndromes);

  if (kl.pass) {
    const KrausSet rec = recovery_map(code, dense);
    const DenseOperator rho(code.projector.matrix() / code.projector.trace());
    double worst = 0.0;
    for (const auto &e : dense) {
      const Matrix hit = e.matrix() * rho.matrix() * e.matrix().adjoint();
      const State damaged(DenseOperator(Matrix(hit / hit.trace())));
      const OperationOutput fixed = apply_operation(rec, damaged);
      worst = std::max(worst, trace_distance(DenseOperator(fixed.output), rho));
    }
    r["recovery_max_trace_distance"] = clean_number(worst);
  } else {
    r["recovery_max_trace_distance"] = nullptr;
  }

  const DistanceResult dist = distance_search(code, max_weight);
  r["distance"] = dist.distance ? Json(*dist.distance) : Json(nullptr);
  r["distance_searched_up_to"] = dist.searched_up_to;
  r["distance_witness"] = dist.witness ? Json(word_label(*dist.witness)) : Json(nullptr);
  return r;
}

Json make_report(const std::string &command, Json inputs, Json results) {
  Json out = Json::object();
  out["version"] = kCliVersion;
  out["command"] = command;
  out["inputs"] = std::move(inputs);
  out["results"] = std::move(results);
  return out;
}

Json error_json(const std::string &kind, const std::string &message, std::optional<std::size_t> position = {}) {
  Json e = Json::object();
  e["kind"] = kind;
  e["message"] = message;
  if (position) e["position"] = *position;
  Json out = Json::object();
  out["error"] = std::move(e);
  return out;
}

struct Options {
  std::string expr;
  std::uint32_t d = 2;
  std::uint32_t sites = 0;
  std::vector<double> bloch;
  std::string state;
  std::string observable;
  std::string kraus;
  std::string builtin;
  double p = 0.1;
  std::size_t dim = 2;
  std::string code_name;
  std::string generators;
  std::string errors = "weight1";
  std::uint32_t max_weight = 0;
  std::uint32_t qubits = 1;
  std::size_t shots = 10000;
  std::size_t batches = 10;
  std::uint64_t seed = 1;
};

}  // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out) {
  CLI::App app{"Operator-algebra workbench", "opalg"};
  app.require_subcommand(1);
  Options o;

  auto *paulimul = app.add_subcommand("paulimul", "Evaluate an operator expression to canonical Pauli form");
  paulimul->add_option("expr", o.expr, "Operator expression")->required();
  paulimul->add_option("--d", o.d, "Local dimension")->check(CLI::Range(2u, 64u));
  paulimul->add_option("--sites", o.sites, "Expected site count");

  auto *state = app.add_subcommand("state", "State utilities");
  state->require_subcommand(1);
  auto *state_report = state->add_subcommand("report", "Describe a state");
  auto *opt_expr = state_report->add_option("--expr", o.expr, "Density operator expression");
  auto *opt_bloch = state_report->add_option("--bloch", o.bloch, "Bloch angles theta phi")->expected(2);
  auto *opt_state = state_report->add_option("--state", o.state, "Builtin name, inline JSON or file");
  opt_expr->excludes(opt_bloch)->excludes(opt_state);
  opt_bloch->excludes(opt_state);

  auto *gns = app.add_subcommand("gns", "GNS construction of a state");
  gns->add_option("--state", o.state, "Builtin name, inline JSON or file")->required();

  auto *measure = app.add_subcommand("measure", "Projective measurement of an observable");
  measure->add_option("--state", o.state, "Builtin name, inline JSON or file")->required();
  measure->add_option("--observable", o.observable, "Expression, inline JSON or file")->required();

  auto *channel = app.add_subcommand("channel", "Channel utilities");
  channel->require_subcommand(1);
  auto *analyze = channel->add_subcommand("analyze", "Choi, CP and dilation analysis");
  auto *opt_kraus = analyze->add_option("--kraus", o.kraus, "Kraus JSON file");
  auto *opt_builtin = analyze->add_option("--builtin", o.builtin, "Builtin channel")
                          ->check(CLI::IsMember({"transpose", "identity", "depolarizing"}));
  opt_kraus->excludes(opt_builtin);
  analyze->add_option("--p", o.p, "Depolarizing probability");
  analyze->add_option("--dim", o.dim, "Builtin channel dimension")->check(CLI::Range(1, 64));

  auto *code = app.add_subcommand("code", "Stabilizer code utilities");
  code->require_subcommand(1);
  auto *verify = code->add_subcommand("verify", "Knill-Laflamme, characters and distance");
  auto *opt_name = verify->add_option("--name", o.code_name, "Builtin code")
                       ->check(CLI::IsMember({"rep2", "rep3", "five_qubit"}));
  auto *opt_gens = verify->add_option("--generators", o.generators, "Code JSON file");
  opt_name->excludes(opt_gens);
  verify->add_option("--errors", o.errors, "Error model")->check(CLI::IsMember({"weight1"}));
  verify->add_option("--max-weight", o.max_weight, "Distance search bound");

  auto *shadows = app.add_subcommand("shadows", "Classical shadows");
  shadows->require_subcommand(1);
  auto *demo = shadows->add_subcommand("demo", "Estimate Pauli expectations from random Pauli measurements");
  demo->add_option("--qubits", o.qubits, "Qubit count")->check(CLI::Range(1u, 4u));
  demo->add_option("--shots", o.shots, "Snapshot count")->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
  demo->add_option("--batches", o.batches, "Median-of-means batches")->check(CLI::PositiveNumber);
  demo->add_option("--seed", o.seed, "RNG seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    Json inputs = Json::object();
    if (paulimul->parsed()) {
      inputs["expr"] = o.expr;
      inputs["d"] = o.d;
      const ExprAst ast = parse_expr(o.expr);
      OperatorSum value = o.sites ? eval_expr(ast, AlgebraSpec(o.d, o.sites)) : eval_expr_natural(ast, o.d);
      if (o.sites) inputs["sites"] = o.sites;
      Json r = Json::object();
      r["parsed"] = print_expr(ast);
      r["canonical"] = value.to_string();
      r["operator"] = operator_to_json(value);
      r["terms"] = value.size();
      out << make_report("paulimul", std::move(inputs), std::move(r)).dump(2) << '\n';
      return kExitOk;
    }
    if (state_report->parsed()) {
      std::optional<State> pi;
      if (*opt_expr) {
        inputs["expr"] = o.expr;
        pi = State(to_dense(eval_expr_natural(parse_expr(o.expr))));
      } else if (*opt_bloch) {
        inputs["bloch"] = o.bloch;
        pi = state_from_angles(o.bloch.at(0), o.bloch.at(1));
      } else if (*opt_state) {
        inputs["state"] = o.state;
        pi = resolve_state(o.state);
      } else {
        throw UsageError("state report needs one of --expr, --bloch or --state");
      }
      out << make_report("state report", std::move(inputs), state_results(*pi)).dump(2) << '\n';
      return kExitOk;
    }
    if (gns->parsed()) {
      inputs["state"] = o.state;
      out << make_report("gns", std::move(inputs), gns_results(resolve_state(o.state))).dump(2) << '\n';
      return kExitOk;
    }
    if (measure->parsed()) {
      inputs["state"] = o.state;
      inputs["observable"] = o.observable;
      const State pi = resolve_state(o.state);
      const DenseOperator obs = resolve_observable(o.observable, pi.dim());
      out << make_report("measure", std::move(inputs), measure_results(pi, obs)).dump(2) << '\n';
      return kExitOk;
    }
    if (analyze->parsed()) {
      std::optional<KrausSet> kraus;
      std::optional<ChoiMatrix> choi;
      if (*opt_kraus) {
        inputs["kraus"] = o.kraus;
        kraus = kraus_from_json(read_json_file(o.kraus));
      } else if (*opt_builtin) {
        inputs["builtin"] = o.builtin;
        inputs["dim"] = o.dim;
        if (o.builtin == "transpose") {
          choi = choi_from_superop(transpose_superop(o.dim), o.dim, o.dim);
        } else if (o.builtin == "identity") {
          kraus = identity_channel(o.dim);
        } else {
          inputs["p"] = o.p;
          kraus = depolarizing_channel(o.dim, o.p);
        }
      } else {
        throw UsageError("channel analyze needs --kraus or --builtin");
      }
      if (!choi) choi = choi_of(*kraus);
      out << make_report("channel analyze", std::move(inputs), channel_results(kraus, *choi)).dump(2) << '\n';
      return kExitOk;
    }
    if (verify->parsed()) {
      std::optional<StabilizerCode> c;
      if (*opt_name) {
        inputs["name"] = o.code_name;
        c = build_code(o.code_name);
      } else if (*opt_gens) {
        inputs["generators"] = o.generators;
        c = code_from_json(read_json_file(o.generators));
      } else {
        throw UsageError("code verify needs --name or --generators");
      }
      inputs["errors"] = o.errors;
      const std::uint32_t w = o.max_weight ? o.max_weight : c->n;
      inputs["max_weight"] = w;
      out << make_report("code verify", std::move(inputs), code_results(*c, w)).dump(2) << '\n';
      return kExitOk;
    }
    if (demo->parsed()) {
      inputs["qubits"] = o.qubits;
      inputs["shots"] = o.shots;
      inputs["batches"] = o.batches;
      inputs["seed"] = o.seed;
      if (o.batches > o.shots) throw UsageError("--batches must not exceed --shots");
      const ShadowDemo d = shadow_demo(o.qubits, o.shots, o.batches, o.seed);
      Json r = Json::object();
      r["state"] = d.state_name;
      r["labels"] = d.labels;
      r["estimates"] = numbers(d.estimates);
      r["exact_values"] = numbers(d.exact_values);
      r["errors"] = numbers(d.errors);
      r["max_abs_error"] = clean_number(d.errors.empty() ? 0.0 : *std::max_element(d.errors.begin(), d.errors.end()));
      r["seed"] = d.seed;
      out << make_report("shadows demo", std::move(inputs), std::move(r)).dump(2) << '\n';
      return kExitOk;
    }
    throw UsageError("missing subcommand");
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    out << error_json("usage", e.what()).dump(2) << '\n';
    return kExitUsage;
  } catch (const UsageError &e) {
    out << error_json("usage", e.what()).dump(2) << '\n';
    return kExitUsage;
  } catch (const ParseError &e) {
    out << error_json(to_string(e.kind()), e.what(), e.position()).dump(2) << '\n';
    return kExitDomain;
  } catch (const Error &e) {
    out << error_json(to_string(e.kind()), e.what()).dump(2) << '\n';
    return kExitDomain;
  } catch (const nlohmann::json::exception &e) {
    out << error_json("parse", e.what()).dump(2) << '\n';
    return kExitDomain;
  } catch (const std::exception &e) {
    out << error_json("internal", e.what()).dump(2) << '\n';
    return kExitDomain;
  }
}

}  // namespace opalg
