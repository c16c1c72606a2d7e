// Copyright 2026 The qkdcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

#include "qkdcd/attacks.hpp"
#include "qkdcd/discrimination.hpp"
#include "qkdcd/protocol.hpp"

namespace qkdcd {

using json = nlohmann::json;

// Complex scalars serialize as [re, im]; matrices as row-major arrays of
// such pairs. Object keys are emitted in sorted order, so identical inputs
// produce byte-identical documents.

json complex_json(const cplx& z);
json vector_json(const CVector& v);
json matrix_json(const CMatrix& m);

// Inverse of matrix_json. Throws ConfigError on anything that is not a
// rectangular row-major array of [re, im] pairs.
CMatrix matrix_from_json(const json& j);

// Simulation run description parsed from a config file. Unknown keys are
// rejected at every nesting level.
struct RunConfig {
  ProtocolConfig protocol;
  int sessions = 1;
  int verbosity = 1;  // 0: aggregate, 1: + sessions, 2: + transcripts
};

RunConfig parse_run_config(const json& j);  // throws ConfigError

json catalog_json(const OperatorSet& set, const FlipActionReport& verification);
json discrimination_json(const OperatorSet& set, const DiscriminationReport& rep);
json pair_json(const std::string& name_a, const std::string& name_b, const CMatrix& a,
               const CMatrix& b, double p1, double p2);
json simulation_json(const RunConfig& cfg, const std::vector<SessionResult>& sessions,
                     const AttackReport* attack, bool reproducible);

// Flattened one-row CSV projection of a simulation report's aggregate.
std::string aggregate_csv(const json& simulation_report);

// Structural validator for the schema subset shipped under schemas/:
// type, enum, required, properties, additionalProperties, items,
// minItems/maxItems, minimum/maximum. Returns false and fills `error` on
// the first violation.
bool validate_schema(const json& doc, const json& schema, std::string* error);

// Canonical serialization used for every emitted document.
std::string dump_report(const json& j);

}  // namespace qkdcd
