// Copyright 2026 The wsim Authors
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

#include <string>
#include <vector>

#include <json.hpp>

#include "wsim/boolean_fourier.hpp"
#include "wsim/ct_states.hpp"
#include "wsim/ecs_ops.hpp"
#include "wsim/estimators.hpp"
#include "wsim/gates.hpp"
#include "wsim/pauli.hpp"
#include "wsim/simulators.hpp"

namespace wsim::io {

using Json = nlohmann::ordered_json;

inline constexpr const char *kSchemaVersion = "wsim/1";

/// Parse errors carry the line and column of the offending byte.
Json parse_json(const std::string &text, const std::string &origin = "<input>");
Json read_json_file(const std::string &path);

// Every normalize_* checks a recipe and returns its canonical form: defaults
// filled in, numbers as doubles, complex numbers as [re, im]. Errors are
// ErrorKind::Parse with a JSON-pointer style field path.

Json normalize_state(const Json &j, const std::string &path = "");
Json normalize_circuit(const Json &j, int n, const std::string &path = "");
Json normalize_operator(const Json &j, const std::string &path = "");
Json normalize_plan(const Json &j, const std::string &path = "");
/// Top-level document: {"schema": ..., "type": "state" | "operator" | "circuit" | "plan", ...}.
Json normalize_document(const Json &j);

/// Builders take canonical recipes.
CtState build_state(const Json &state);
Circuit build_circuit(const Json &gates);
EcsOperator build_operator(const Json &op);
PauliSum build_pauli_sum(const Json &op);
MpsDescription build_mps(const Json &sites);
int recipe_width(const Json &recipe);

Json complex_json(Amplitude z);
Json report_json(const EstimateReport &r);
Json table_json(const FourierTable &t);

}  // namespace wsim::io
