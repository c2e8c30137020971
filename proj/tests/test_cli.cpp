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
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

using nlohmann::json;

struct ToolRun {
  int code;
  std::string out;
};

// Runs lmetool with stderr folded into the captured output.
ToolRun lmetool(const std::string& args) {
  const std::string cmd = std::string(LMETOOL_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t k = std::fread(buf, 1, sizeof buf, p)) out.append(buf, k);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("lmetool_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
  std::string make(const std::string& args, const std::string& name) const {
    const ToolRun r = lmetool("make " + args + " --out " + path(name));
    EXPECT_EQ(r.code, 0) << r.out;
    return path(name);
  }

  std::filesystem::path dir_;
};

TEST_F(Cli, CertifyGhzIsLme) {
  const ToolRun r = lmetool("certify " + make("ghz 3", "ghz3.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "LME");
  EXPECT_EQ(j["witness_locals"].size(), 3u);
  EXPECT_LT(j["orthogonality_residual"].get<double>(), 1e-9);
  EXPECT_EQ(j["config"]["seed"], 0);
}

TEST_F(Cli, CertifyW3IsNotLme) {
  const json j = json::parse(lmetool("certify " + make("w 3", "w3.json")).out);
  EXPECT_EQ(j["verdict"], "NOT_LME");
  EXPECT_EQ(j["method"], "obstruction");
  EXPECT_TRUE(j["witness_locals"].is_null());
}

TEST_F(Cli, CertifyRandomNeverUnverifiedLme) {
  const std::string f = make("random 3 --seed 3", "r.json");
  const json j = json::parse(lmetool("certify " + f + " --restarts 16 --seed 2 --tol 1e-9").out);
  EXPECT_EQ(j["config"]["restarts"], 16);
  if (j["verdict"] == "LME") {
    EXPECT_LT(j["orthogonality_residual"].get<double>(), 1e-9);
  } else {
    EXPECT_EQ(j["verdict"], "UNDETERMINED");
  }
}

TEST_F(Cli, AnalyzeW3AndBell) {
  const json w = json::parse(lmetool("analyze " + make("w 3", "w3.json")).out);
  for (const json& sp : w["spectra"]) {
    EXPECT_NEAR(sp[0].get<double>(), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(sp[1].get<double>(), 1.0 / 3.0, 1e-12);
  }
  write("bell.json", R"({"n": 2, "amplitudes": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]})");
  const json b = json::parse(lmetool("analyze " + path("bell.json")).out);
  for (const json& sp : b["spectra"]) EXPECT_NEAR(sp[0].get<double>(), 0.5, 1e-12);
  for (const json& d : b["degenerate"]) EXPECT_TRUE(d.get<bool>());
}

TEST_F(Cli, MalformedInputExitsOneNamingField) {
  write("bad.json", R"({"n": 2, "amps": []})");
  const ToolRun r = lmetool("analyze " + path("bad.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("amplitudes"), std::string::npos);
  write("garbage.json", "{not json");
  EXPECT_EQ(lmetool("certify " + path("garbage.json")).code, 1);
  EXPECT_EQ(lmetool("certify " + path("missing.json")).code, 1);
  EXPECT_EQ(lmetool("certify").code, 1);
  EXPECT_EQ(lmetool("frobnicate").code, 1);
  EXPECT_EQ(lmetool("make w 3 --edges 1-2").code, 1);
}

TEST_F(Cli, MakeRandomIsByteIdentical) {
  const ToolRun a = lmetool("make random 4 --seed 7"), b = lmetool("make random 4 --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, lmetool("make random 4 --seed 8").out);
}

TEST_F(Cli, CertifyIsByteIdentical) {
  const std::string f = make("random 3 --seed 5", "r.json");
  EXPECT_EQ(lmetool("certify " + f + " --seed 4").out, lmetool("certify " + f + " --seed 4").out);
}

TEST_F(Cli, CompileGraphHasDegreeTwo) {
  const std::string t = make("graph --edges \"1-2,2-3\" --table", "g.json");
  const json j = json::parse(lmetool("compile " + t).out);
  EXPECT_EQ(j["degree"], 2);
  ASSERT_EQ(j["circuit"]["gates"].size(), 2u);
  EXPECT_EQ(j["circuit"]["gates"][0]["qubits"], json::array({1, 2}));
  EXPECT_EQ(j["circuit"]["gates"][1]["qubits"], json::array({2, 3}));
  EXPECT_LT(j["round_trip_error"].get<double>(), 1e-10);
  // Flat states are accepted too; alpha == 0 compiles to nothing.
  const json p = json::parse(lmetool("compile " + make("plus 3", "p.json")).out);
  EXPECT_EQ(p["degree"], 0);
  EXPECT_TRUE(p["circuit"]["gates"].empty());
}

TEST_F(Cli, StabilizersReportGapOne) {
  const json j = json::parse(lmetool("stabilizers " + make("graph --edges 1-2,2-3 --table", "g.json")).out);
  EXPECT_NEAR(j["hamiltonian_gap"].get<double>(), 1.0, 1e-9);
  EXPECT_LT(j["projector_error"].get<double>(), 1e-12);
  for (const json& k : j["stabilizers"]) {
    EXPECT_TRUE(k["factorizes"].get<bool>());
    EXPECT_TRUE(k["tensor_product"].get<bool>());
  }
}

TEST_F(Cli, EntangleEncodeLockdemo) {
  const std::string g = make("weighted_graph --edges 1-2:0.3,2-3:0.1", "wg.json");
  const json e = json::parse(lmetool("entangle " + g).out);
  EXPECT_TRUE(e["maximal"].get<bool>());
  EXPECT_NEAR(e["entropy_bits"].get<double>(), 3.0, 1e-8);
  const json id = json::parse(lmetool("entangle " + g + " --spec identity").out);
  EXPECT_FALSE(id["maximal"].get<bool>());
  const json enc = json::parse(lmetool("encode " + g).out);
  EXPECT_LT(enc["gram_max_offdiagonal"].get<double>(), 1e-9);
  EXPECT_LT(enc["max_leak"].get<double>(), 1e-10);
  EXPECT_EQ(enc["leaks"].size(), 6u);
  const json lock = json::parse(lmetool("lockdemo --restarts 2 --seed 1").out);
  EXPECT_LT(lock["max_entropy"].get<double>(), 3.0);
  EXPECT_EQ(lock["restarts"], 2);
  EXPECT_EQ(lock["seed"], 1);
}

TEST_F(Cli, EncodeRejectsNonFlat) {
  EXPECT_EQ(lmetool("encode " + make("w 3", "w3.json")).code, 1);
}

}  // namespace
