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

#include <gtest/gtest.h>

#include <random>

#include "lme/errors.hpp"
#include "lme/json_io.hpp"
#include "oracles.hpp"

namespace lme {
namespace {

using json_io::json;

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(JsonIo, StateRoundTripIsLossless) {
  const StateVector s = family::random(3, 12);
  const StateVector back = json_io::state_from_json(json::parse(json_io::dump(json_io::to_json(s))));
  EXPECT_EQ(back.amplitudes(), s.amplitudes());
}

TEST(JsonIo, TableRoundTripIsLossless) {
  std::mt19937_64 rng(1);
  const PhaseTable t(3, oracle::random_phases(3, rng));
  const PhaseTable back = json_io::table_from_json(json::parse(json_io::dump(json_io::to_json(t))));
  EXPECT_EQ(back.alpha(), t.alpha());
}

TEST(JsonIo, CircuitUsesOneBasedQubits) {
  const PhaseCircuit c(3, {{{0, 2}, 1.5}});
  const json j = json_io::to_json(c);
  EXPECT_EQ(j["gates"][0]["qubits"], json::array({1, 3}));
  const PhaseCircuit back = json_io::circuit_from_json(j);
  EXPECT_EQ(back.gates()[0].qubits, (std::vector<int>{0, 2}));
  EXPECT_EQ(back.gates()[0].phase, 1.5);
}

TEST(JsonIo, ErrorsNameTheField) {
  EXPECT_NE(error_of([] { json_io::state_from_json(json{{"n", 1}}); }).find("'amplitudes'"), std::string::npos);
  EXPECT_NE(error_of([] { json_io::state_from_json(json{{"amplitudes", json::array()}}); }).find("'n'"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              json_io::state_from_json(json::parse(R"({"n":1,"amplitudes":[[1,0],[0,"x"]]})"));
            }).find("'amplitudes[1]'"),
            std::string::npos);
  EXPECT_NE(error_of([] { json_io::table_from_json(json::parse(R"({"n":1,"alpha":[0]})")); }).find("'alpha'"),
            std::string::npos);
  EXPECT_NE(error_of([] { json_io::circuit_from_json(json::parse(R"({"n":2,"gates":[{"qubits":[1,3],"phase":1}]})")); })
                .find("'gates[0].qubits'"),
            std::string::npos);
  EXPECT_NE(error_of([] { json_io::state_from_json(json::parse(R"({"n":1,"amplitudes":[[1,0],[1,0]]})")); })
                .find("unit norm"),
            std::string::npos);
}

TEST(JsonIo, ReportShape) {
  CertificationReport r;
  r.verdict = Verdict::kNotLme;
  r.method = CertMethod::kObstruction;
  const json j = json_io::to_json(r);
  EXPECT_EQ(j["verdict"], "NOT_LME");
  EXPECT_EQ(j["method"], "obstruction");
  EXPECT_TRUE(j["witness_locals"].is_null());
  EXPECT_TRUE(j["flatness_residual"].is_null());
  EXPECT_EQ(j["restarts_used"], 0);

  r.witness = LocalUnitarySet({gates::y()});
  const json w = json_io::to_json(r)["witness_locals"];
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0][1], json::array({0.0, -1.0}));
}

TEST(JsonIo, MissingFile) { EXPECT_THROW(json_io::read_file("/nonexistent/x.json"), InputError); }

}  // namespace
}  // namespace lme
