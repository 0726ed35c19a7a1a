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

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>
#include "opalg/channels.hpp"
#include "opalg/composite.hpp"
#include "opalg/pauli_algebra.hpp"
#include "opalg/stabilizer_qec.hpp"
#include "opalg/states.hpp"

namespace opalg {

using Json = nlohmann::ordered_json;

/// Rounds to a 1e-12 grid and flushes smaller magnitudes to zero.
double clean_number(double v);

Json complex_to_json(cplx c);
/// Accepts a bare number or an [re, im] pair.
cplx complex_from_json(const Json &j);

/// {"dim": n, "data": [[[re, im], ...], ...]}; rectangular matrices carry
/// "rows" and "cols" instead of "dim".
Json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const Json &j);

/// {"d", "n", "terms": [{"x", "z", "coeff": [re, im]}]} with phases folded
/// into the coefficients.
Json operator_to_json(const OperatorSum &a);
OperatorSum operator_from_json(const Json &j);

/// {"dim", "density": matrix}.
Json state_to_json(const State &pi);
State state_from_json(const Json &j);

/// {"dim_in", "dim_out", "kraus": [matrix, ...]}.
Json kraus_to_json(const KrausSet &k);
KrausSet kraus_from_json(const Json &j);

/// {"local_dims": [...]}.
Json layout_to_json(const FactorLayout &layout);
FactorLayout layout_from_json(const Json &j);

/// Qubit word with its phase as a prefix: "XZ", "-YY", "iX".
std::string signed_letters(const PauliWord &w);
PauliWord word_from_signed_letters(const std::string &s);

/// {"name", "n", "generators": [words], "alphabet": [expressions], "distance"?}.
Json code_to_json(const StabilizerCode &code);
StabilizerCode code_from_json(const Json &j);

/// Reads and parses a JSON file; throws Io or Parse.
Json read_json_file(const std::filesystem::path &path);

}  // namespace opalg
