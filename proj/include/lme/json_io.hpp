// Copyright 2026 The lmekit Authors
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

// JSON interchange formats. Qubits are numbered from 1 in every format.
//
//   state:   {"n": int, "amplitudes": [[re, im], ...]}
//   table:   {"n": int, "alpha": [float, ...]}
//   circuit: {"n": int, "gates": [{"qubits": [int, ...], "phase": float}, ...]}
//
// Parse failures throw InputError naming the offending field.

#include <string>

#include <json.hpp>

#include "lme/certifier.hpp"
#include "lme/phase_table.hpp"
#include "lme/phasecompiler.hpp"
#include "lme/qcore.hpp"

namespace lme::json_io {

using nlohmann::json;

json to_json(const StateVector& state);
json to_json(const PhaseTable& table);
json to_json(const PhaseCircuit& circuit);
json to_json(const CertificationReport& report);
/// [[ [re,im] x4 ] x n], each matrix in row-major order.
json to_json(const LocalUnitarySet& locals);
json matrix_to_json(const CMatrix& m);

StateVector state_from_json(const json& j);
PhaseTable table_from_json(const json& j);
PhaseCircuit circuit_from_json(const json& j);

/// Reads and parses a file; InputError if it is missing or not JSON.
json read_file(const std::string& path);

/// Two-space indented dump followed by a newline.
std::string dump(const json& j);

}  // namespace lme::json_io
