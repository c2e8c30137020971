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

#include "lme/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lme/errors.hpp"

namespace lme::json_io {
namespace {

[[noreturn]] void fail(const std::string& what, const std::string& field, const std::string& why) {
  throw InputError(what + " JSON: field '" + field + "' " + why);
}

const json& field(const json& j, const std::string& what, const std::string& name) {
  if (!j.is_object()) throw InputError(what + " JSON: expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(what, name, "is missing");
  return *it;
}

int read_n(const json& j, const std::string& what) {
  const json& n = field(j, what, "n");
  if (!n.is_number_integer()) fail(what, "n", "must be an integer");
  const long long v = n.get<long long>();
  if (v < 1 || v > kMaxQubits) fail(what, "n", "is out of range");
  return static_cast<int>(v);
}

double read_number(const json& v, const std::string& what, const std::string& name) {
  if (!v.is_number()) fail(what, name, "must be a number");
  return v.get<double>();
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json to_json(const StateVector& state) {
  json amps = json::array();
  for (const cplx& a : state.amplitudes()) amps.push_back(complex_to_json(a));
  return json{{"n", state.num_qubits()}, {"amplitudes", std::move(amps)}};
}

json to_json(const PhaseTable& table) { return json{{"n", table.num_qubits()}, {"alpha", table.alpha()}}; }

json to_json(const PhaseCircuit& circuit) {
  json gates = json::array();
  for (const PhaseGate& g : circuit.gates()) {
    json qubits = json::array();
    for (int q : g.qubits) qubits.push_back(q + 1);
    gates.push_back(json{{"qubits", std::move(qubits)}, {"phase", g.phase}});
  }
  return json{{"n", circuit.num_qubits()}, {"gates", std::move(gates)}};
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const LocalUnitarySet& locals) {
  json out = json::array();
  for (const Mat2& u : locals.mats()) {
    out.push_back(json::array({complex_to_json(u(0, 0)), complex_to_json(u(0, 1)), complex_to_json(u(1, 0)),
                               complex_to_json(u(1, 1))}));
  }
  return out;
}

json to_json(const CertificationReport& report) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j{{"verdict", to_string(report.verdict)},
         {"method", to_string(report.method)},
         {"flatness_residual", opt(report.flatness_residual)},
         {"orthogonality_residual", opt(report.orthogonality_residual)},
         {"witness_locals", report.witness ? to_json(*report.witness) : json(nullptr)},
         {"flattener_locals", report.flattener ? to_json(*report.flattener) : json(nullptr)},
         {"restarts_used", report.restarts_used}};
  if (report.obstruction) {
    const Obstruction& o = *report.obstruction;
    json fits = json::array();
    for (const PairCorrelatorFit& f : o.fits) {
      fits.push_back(json{{"pair", {f.i + 1, f.j + 1}}, {"a", f.a}, {"b", f.b}, {"c", f.c}, {"d", f.d}});
    }
    j["obstruction"] = json{{"triple", {o.triple[0] + 1, o.triple[1] + 1, o.triple[2] + 1}},
                            {"fits", std::move(fits)},
                            {"inconsistency", o.inconsistency}};
  } else {
    j["obstruction"] = nullptr;
  }
  return j;
}

StateVector state_from_json(const json& j) {
  const int n = read_n(j, "state");
  const json& amps = field(j, "state", "amplitudes");
  if (!amps.is_array()) fail("state", "amplitudes", "must be an array");
  const std::size_t dim = std::size_t{1} << n;
  if (amps.size() != dim) fail("state", "amplitudes", "must have 2^n entries");
  CVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const json& a = amps[i];
    const std::string name = "amplitudes[" + std::to_string(i) + "]";
    if (!a.is_array() || a.size() != 2) fail("state", name, "must be a [re, im] pair");
    v[static_cast<Eigen::Index>(i)] = cplx(read_number(a[0], "state", name), read_number(a[1], "state", name));
  }
  const double norm = v.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-9) fail("state", "amplitudes", "must have unit norm");
  // Tolerate norms off by rounding in the decimal representation.
  return StateVector::normalized(n, std::move(v));
}

PhaseTable table_from_json(const json& j) {
  const int n = read_n(j, "table");
  const json& alpha = field(j, "table", "alpha");
  if (!alpha.is_array()) fail("table", "alpha", "must be an array");
  if (alpha.size() != (std::size_t{1} << n)) fail("table", "alpha", "must have 2^n entries");
  std::vector<double> a;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double x = read_number(alpha[i], "table", "alpha[" + std::to_string(i) + "]");
    if (!std::isfinite(x)) fail("table", "alpha[" + std::to_string(i) + "]", "must be finite");
    a.push_back(x);
  }
  return PhaseTable(n, std::move(a));
}

PhaseCircuit circuit_from_json(const json& j) {
  const int n = read_n(j, "circuit");
  const json& gates = field(j, "circuit", "gates");
  if (!gates.is_array()) fail("circuit", "gates", "must be an array");
  std::vector<PhaseGate> out;
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const std::string prefix = "gates[" + std::to_string(g) + "]";
    if (!gates[g].is_object()) fail("circuit", prefix, "must be an object");
    if (!gates[g].contains("qubits")) fail("circuit", prefix + ".qubits", "is missing");
    const json& qubits = gates[g]["qubits"];
    if (!qubits.is_array()) fail("circuit", prefix + ".qubits", "must be an array");
    PhaseGate gate;
    for (const json& q : qubits) {
      if (!q.is_number_integer()) fail("circuit", prefix + ".qubits", "must hold integers");
      const long long v = q.get<long long>();
      if (v < 1 || v > n) fail("circuit", prefix + ".qubits", "holds a qubit outside 1..n");
      gate.qubits.push_back(static_cast<int>(v - 1));
    }
    if (!gates[g].contains("phase")) fail("circuit", prefix + ".phase", "is missing");
    gate.phase = read_number(gates[g]["phase"], "circuit", prefix + ".phase");
    out.push_back(std::move(gate));
  }
  return PhaseCircuit(n, std::move(out));
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError(path + ": not valid JSON (" + e.what() + ")");
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace lme::json_io
