// Copyright 2026 The lmg-bench Authors
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


#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json.hpp"

namespace lmg::cli {
namespace {

using json = nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, SpectrumListsEveryState) {
  const auto r = call({"spectrum", "--n", "7", "--v", "0.75", "--w", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["states"].size(), 8u);
  EXPECT_NEAR(j["states"][0]["omega_exact"].get<double>(), -3.3405152918507, 1e-12);
  for (const auto& s : j["states"]) {
    EXPECT_NEAR(s["omega_bethe"].get<double>(), s["omega_exact"].get<double>(), 1e-9);
  }
}

TEST(Cli, SpectrumCsv) {
  const auto r = call({"spectrum", "--n", "2", "--v", "0.5", "--w", "0", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("index,m,nu_a,nu_b,sector_index,omega_exact,omega_bethe,pairons\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(Cli, AnglesForN7Ground) {
  const auto r = call({"angles", "--n", "7", "--v", "0.75", "--w", "0.5", "--sector", "3,1,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["depth"], "linear");
  EXPECT_NEAR(j["thetas"][0].get<double>(), 3.13478, 1e-5);
  EXPECT_NEAR(j["thetas"][1].get<double>(), 3.20338, 1e-5);
  EXPECT_NEAR(j["thetas"][2].get<double>(), 9.78939, 1e-5);
}

TEST(Cli, OutputIsReproducible) {
  const std::vector<std::string> args{"vqe", "--n", "5", "--v", "0.9", "--w", "-0.6",
                                      "--restarts", "3", "--seed", "11", "--threads", "2"};
  const auto a = call(args);
  const auto b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, InvalidArgumentsExitTwo) {
  EXPECT_EQ(call({"spectrum", "--n", "0", "--v", "1", "--w", "0"}).code, 2);
  EXPECT_EQ(call({"spectrum", "--v", "1"}).code, 2);
  EXPECT_EQ(call({"teleport"}).code, 2);
  const auto r = call({"state", "--n", "4", "--v", "1", "--w", "0", "--sector", "1,1,0"});
  EXPECT_EQ(r.code, 2);
  const json e = json::parse(r.err);
  EXPECT_EQ(e["error"]["code"], "invalid-argument");
}

TEST(Cli, ComputationFailuresExitOne) {
  const auto r = call({"state", "--n", "3", "--v", "0.5", "--w", "1.0", "--sector", "1,1,0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "unsupported-regime");
  const auto ok = call({"state", "--n", "3", "--v", "0.5", "--w", "1.0", "--sector", "1,1,0",
                        "--allow-hyperbolic"});
  EXPECT_EQ(ok.code, 0) << ok.err;
}

TEST(Cli, QasmExport) {
  const auto r = call({"circuit", "--n", "7", "--v", "0.75", "--w", "0.5", "--sector", "3,1,0",
                       "--depth", "log", "--format", "qasm"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("OPENQASM 3;", 0), 0u);
  EXPECT_NE(r.out.find("qubit[4] q;"), std::string::npos);
  EXPECT_NE(r.out.find("ctrl @ ry("), std::string::npos);
}

TEST(Cli, CircuitFileFeedsSimulate) {
  const auto path = std::filesystem::temp_directory_path() / "lmg_cli_test_circuit.json";
  const auto w = call({"circuit", "--n", "7", "--v", "0.75", "--w", "0.5", "--sector", "3,1,0",
                       "--out", path.string()});
  ASSERT_EQ(w.code, 0) << w.err;
  ASSERT_TRUE(std::filesystem::exists(path));
  const auto r = call({"simulate", "--circuit", path.string(), "--report-energy", "--n", "7",
                       "--v", "0.75", "--w", "0.5", "--sector", "3,1,0"});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["energy"].get<double>(), -3.3405152918507, 1e-12);
  EXPECT_EQ(call({"simulate", "--circuit", path.string()}).code, 2);
}

TEST(Cli, VerifyPasses) {
  const auto r = call({"verify"});
  EXPECT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_GE(j["checks"].size(), 9u);
}

}  // namespace
}  // namespace lmg::cli
