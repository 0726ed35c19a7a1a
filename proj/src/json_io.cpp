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


#include "opalg/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "opalg/errors.hpp"
#include "opalg/expr.hpp"

namespace opalg {

namespace {

[[noreturn]] void bad(const std::string &msg) { throw Error(ErrorKind::Parse, msg); }

const Json &field(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t size_field(const Json &j, const char *key) {
  const Json &v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    bad(std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

Exponents exponents_from_json(const Json &j, std::size_t n, std::uint32_t d) {
  if (!j.is_array() || j.size() != n) bad("exponent arrays must have n entries");
  Exponents out;
  for (const Json &e : j) {
    if (!e.is_number_integer()) bad("exponents must be integers");
    const long long v = e.get<long long>();
    out.push_back(static_cast<std::uint32_t>(((v % d) + d) % d));
  }
  return out;
}

}  // namespace

double clean_number(double v) {
  if (!std::isfinite(v)) return v;
  if (std::abs(v) < 1e-12) return 0.0;
  if (std::abs(v) > 1e6) return v;
  const double r = std::round(v * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

Json complex_to_json(cplx c) { return Json::array({clean_number(c.real()), clean_number(c.imag())}); }

cplx complex_from_json(const Json &j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad("complex numbers must be a number or an [re, im] pair");
}

Json matrix_to_json(const Matrix &m) {
  Json out = Json::object();
  if (m.rows() == m.cols()) {
    out["dim"] = static_cast<std::size_t>(m.rows());
  } else {
    out["rows"] = static_cast<std::size_t>(m.rows());
    out["cols"] = static_cast<std::size_t>(m.cols());
  }
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    data.push_back(std::move(row));
  }
  out["data"] = std::move(data);
  return out;
}

Matrix matrix_from_json(const Json &j) {
  const Json &data = j.is_array() ? j : field(j, "data");
  if (!data.is_array() || data.empty() || !data[0].is_array() || data[0].empty()) {
    bad("matrix data must be a non-empty array of rows");
  }
  const std::size_t rows = data.size(), cols = data[0].size();
  if (j.is_object()) {
    if (j.contains("dim") && (size_field(j, "dim") != rows || rows != cols)) bad("matrix \"dim\" does not match data");
    if (j.contains("rows") && size_field(j, "rows") != rows) bad("matrix \"rows\" does not match data");
    if (j.contains("cols") && size_field(j, "cols") != cols) bad("matrix \"cols\" does not match data");
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!data[i].is_array() || data[i].size() != cols) bad("matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(data[i][k]);
  }
  return m;
}

Json operator_to_json(const OperatorSum &a) {
  Json terms = Json::array();
  for (const auto &[key, c] : a.terms()) {
    Json t = Json::object();
    t["x"] = key.x;
    t["z"] = key.z;
    t["coeff"] = complex_to_json(c);
    terms.push_back(std::move(t));
  }
  Json out = Json::object();
  out["d"] = a.spec().d;
  out["n"] = a.spec().n;
  out["terms"] = std::move(terms);
  return out;
}

OperatorSum operator_from_json(const Json &j) {
  const std::size_t d = size_field(j, "d"), n = size_field(j, "n");
  if (d < 2 || n < 1 || d > 1u << 16 || n > 1u << 16) bad("operator needs d >= 2 and n >= 1");
  const AlgebraSpec spec(static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(n));
  OperatorSum out(spec);
  const Json &terms = field(j, "terms");
  if (!terms.is_array()) bad("\"terms\" must be an array");
  for (const Json &t : terms) {
    WordKey key{exponents_from_json(field(t, "x"), n, spec.d), exponents_from_json(field(t, "z"), n, spec.d)};
    out.add_term(key, complex_from_json(field(t, "coeff")));
  }
  return out;
}

Json state_to_json(const State &pi) {
  Json out = Json::object();
  out["dim"] = pi.dim();
  out["density"] = matrix_to_json(pi.density().matrix());
  return out;
}

State state_from_json(const Json &j) {
  Matrix m = matrix_from_json(field(j, "density"));
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != size_field(j, "dim")) {
    bad("state \"dim\" does not match the density");
  }
  return State(DenseOperator(std::move(m)));
}

Json kraus_to_json(const KrausSet &k) {
  Json ops = Json::array();
  for (const Matrix &m : k.operators()) ops.push_back(matrix_to_json(m));
  Json out = Json::object();
  out["dim_in"] = k.dim_in();
  out["dim_out"] = k.dim_out();
  out["kraus"] = std::move(ops);
  return out;
}

KrausSet kraus_from_json(const Json &j) {
  const std::size_t din = size_field(j, "dim_in"), dout = size_field(j, "dim_out");
  const Json &list = field(j, "kraus");
  if (!list.is_array() || list.empty()) bad("\"kraus\" must be a non-empty array");
  std::vector<Matrix> ops;
  for (const Json &m : list) {
    ops.push_back(matrix_from_json(m));
    if (static_cast<std::size_t>(ops.back().rows()) != dout || static_cast<std::size_t>(ops.back().cols()) != din) {
      bad("Kraus operator shape does not match dim_out x dim_in");
    }
  }
  return KrausSet(std::move(ops));
}

Json layout_to_json(const FactorLayout &layout) {
  Json out = Json::object();
  out["local_dims"] = layout.local_dims();
  return out;
}

FactorLayout layout_from_json(const Json &j) {
  const Json &dims = field(j, "local_dims");
  if (!dims.is_array()) bad("\"local_dims\" must be an array");
  std::vector<std::size_t> out;
  for (const Json &v : dims) {
    if (!v.is_number_integer() || v.get<long long>() <= 0) bad("local dimensions must be positive integers");
    out.push_back(v.get<std::size_t>());
  }
  return FactorLayout(std::move(out));
}

std::string signed_letters(const PauliWord &w) {
  const std::string letters = w.letters();
  std::uint32_t ys = 0;
  for (char c : letters) ys += c == 'Y';
  static const char *const prefix[] = {"", "i", "-", "-i"};
  return prefix[(w.phase_exp() + 4 - ys % 4) % 4] + letters;
}

PauliWord word_from_signed_letters(const std::string &s) {
  std::size_t pos = 0;
  std::int64_t phase = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) phase += s[pos++] == '-' ? 2 : 0;
  if (pos < s.size() && s[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  const std::string letters = s.substr(pos);
  if (letters.empty() || letters.find_first_not_of("IXYZ") != std::string::npos) {
    bad("invalid Pauli word \"" + s + "\"");
  }
  const PauliWord w = PauliWord::from_letters(letters);
  return w.with_phase(static_cast<std::int64_t>(w.phase_exp()) + phase);
}

Json code_to_json(const StabilizerCode &code) {
  Json gens = Json::array();
  for (const PauliWord &g : code.group.generators()) gens.push_back(signed_letters(g));
  Json alphabet = Json::array();
  for (const OperatorSum &a : code.logical_alphabet) {
    const auto single = a.single_term();
    if (single && std::abs(single->second - 1.0) < 1e-12) {
      alphabet.push_back(signed_letters(single->first));
    } else {
      alphabet.push_back(operator_to_json(a));
    }
  }
  Json out = Json::object();
  out["name"] = code.name;
  out["n"] = code.n;
  out["generators"] = std::move(gens);
  out["alphabet"] = std::move(alphabet);
  if (code.distance) out["distance"] = *code.distance;
  return out;
}

StabilizerCode code_from_json(const Json &j) {
  const Json &gens = field(j, "generators");
  if (!gens.is_array() || gens.empty()) bad("\"generators\" must be a non-empty array of words");
  std::vector<PauliWord> words;
  for (const Json &g : gens) {
    if (!g.is_string()) bad("generators must be word strings");
    words.push_back(word_from_signed_letters(g.get<std::string>()));
    if (words.back().spec() != words.front().spec()) bad("generators must have equal length");
  }
  const AlgebraSpec spec = words.front().spec();
  std::vector<OperatorSum> alphabet;
  if (j.contains("alphabet")) {
    for (const Json &a : j.at("alphabet")) {
      alphabet.push_back(a.is_string() ? eval_expr(parse_expr(a.get<std::string>()), spec) : operator_from_json(a));
    }
  }
  std::optional<std::uint32_t> distance;
  if (j.contains("distance")) distance = static_cast<std::uint32_t>(size_field(j, "distance"));
  std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "custom";
  return make_code(std::move(name), spec, words, std::move(alphabet), distance);
}

Json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Parse, "invalid JSON in '" + path.string() + "': " + e.what());
  }
}

}  // namespace opalg
