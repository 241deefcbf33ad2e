// Copyright 2026 The evacshare Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "evacshare/cli.hpp"
#include "evacshare/plan.hpp"
#include "test_support.hpp"

namespace evacshare {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("evacshare_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  const std::string t1_ = testing::data_path("t1.json");
};

TEST_F(Cli, SolveExactOnT1) {
  const Result r = run({"solve", "--instance", t1_, "--method", "exact"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(parse_plan(r.out).evacuated_total, 6);
  const auto status = nlohmann::json::parse(r.err);
  EXPECT_EQ(status["status"], "optimal");
  EXPECT_EQ(status["objective"], 6);
  EXPECT_EQ(status["best_bound"], 6);
  EXPECT_TRUE(status.contains("nodes"));
  EXPECT_TRUE(status.contains("seconds"));
}

TEST_F(Cli, SolveIsByteIdenticalAcrossRunsAndWorkers) {
  const std::string inst = path("g.json");
  ASSERT_EQ(run({"gen", "--seed", "3", "--ratio", "0.4", "--t-max", "9", "--out", inst}).code, 0);
  for (const std::string method : {"exact", "greedy", "heuristic"}) {
    const std::string first = run({"solve", "--instance", inst, "--method", method}).out;
    EXPECT_FALSE(first.empty());
    for (const std::string workers : {"1", "2", "4"}) {
      EXPECT_EQ(run({"solve", "--instance", inst, "--method", method, "--workers", workers}).out, first) << method;
    }
  }
}

TEST_F(Cli, ValidateBrokenFile) {
  const Result r = run({"validate", "--instance", testing::data_path("broken.json")});
  EXPECT_EQ(r.code, cli::kExitInvalid);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
  EXPECT_EQ(r.out.rfind("CapacityBelowDemand r1", 0), 0u);
  const Result ok = run({"validate", "--instance", t1_});
  EXPECT_EQ(ok.code, cli::kExitOk);
  EXPECT_EQ(ok.out, "ok\n");
}

TEST_F(Cli, ExportMipStartsWithMaximize) {
  const Result r = run({"export-mip", "--instance", t1_, "--mode", "strengthened"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("Maximize\n", 0), 0u);
  const Result v = run({"export-mip", "--instance", t1_, "--mode", "verbatim"});
  EXPECT_NE(v.out.find("x_h1_r1_r1"), std::string::npos);
}

TEST_F(Cli, GenIsDeterministic) {
  const Result a = run({"gen", "--seed", "11", "--ratio", "0.3"});
  const Result b = run({"gen", "--seed", "11", "--ratio", "0.3"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Instance inst = parse_instance(a.out);
  EXPECT_EQ(inst.owners().size(), 4u);
}

TEST_F(Cli, MetricsPrintsEpAndAtd) {
  const std::string plan = path("plan.json");
  ASSERT_EQ(run({"solve", "--instance", t1_, "--out", plan}).code, 0);
  const Result r = run({"metrics", "--instance", t1_, "--plan", plan});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(doc["EP"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(doc["ATD"].get<double>(), 2.0);
}

TEST_F(Cli, SweepWritesCsvAndSvg) {
  const std::string csv = path("r.csv"), svg = path("r.svg");
  const Result r = run({"sweep", "--ratios", "0.3,0.5", "--tmaxes", "5,9", "--methods", "greedy,exact", "--out", csv,
                        "--svg", svg, "--workers", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = testing::read_text(csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 9);
  EXPECT_NE(testing::read_text(svg).find("<svg"), std::string::npos);
}

TEST_F(Cli, UsageErrorsLeaveNoFiles) {
  const std::string csv = path("r.csv");
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"fly"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"solve"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"solve", "--instance", t1_, "--method", "magic"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"solve", "--instance", path("missing.json")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"sweep", "--ratios", "1.5", "--out", csv}).code, cli::kExitUsage);
  EXPECT_EQ(run({"sweep", "--methods", "magic", "--out", csv}).code, cli::kExitUsage);
  EXPECT_EQ(run({"gen", "--ratio", "0", "--out", path("g.json")}).code, cli::kExitUsage);
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(Cli, InvalidInstanceExitsOne) {
  const Result r = run({"solve", "--instance", testing::data_path("broken.json")});
  EXPECT_EQ(r.code, cli::kExitInvalid);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, HelpExitsZero) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("solve"), std::string::npos);
}

}  // namespace
}  // namespace evacshare
