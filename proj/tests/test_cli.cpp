// Copyright 2026 The argfore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;

const std::string kCli = ARGFORE_CLI;
const fs::path kData = ARGFORE_TEST_DATA;
const fs::path kGolden = ARGFORE_GOLDEN;

struct CliResult {
  int status = -1;
  std::string out;
};

// Runs the tool with stdout captured; stderr goes to /dev/null.
CliResult run(const std::string& args) {
  CliResult r;
  std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int st = ::pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ARGFORE_UPDATE_GOLDEN=1 rewrites the files instead of comparing.
void expect_golden(const std::string& args, const std::string& name) {
  CliResult r = run(args);
  ASSERT_EQ(r.status, 0) << args;
  const fs::path path = kGolden / name;
  if (std::getenv("ARGFORE_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << r.out;
    return;
  }
  ASSERT_TRUE(fs::exists(path)) << path;
  EXPECT_EQ(r.out, slurp(path)) << args;
}

std::string data(const char* f) { return (kData / f).string(); }

TEST(Cli, McNemar) { expect_golden("stats mcnemar --yy 44 --yn 12 --ny 76 --nn 52", "mcnemar.txt"); }

TEST(Cli, McNemarJson) {
  CliResult r = run("stats mcnemar --yy 44 --yn 12 --ny 76 --nn 52 --json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["chi2"].get<double>(), 46.5455, 1e-4);
}

TEST(Cli, Ttest) {
  expect_golden(
      "stats ttest --mean-a 0.58 --sd-a 0.24 --n-a 92 --mean-b 0.47 --sd-b 0.25 --n-b 92",
      "ttest.txt");
}

TEST(Cli, ComplexityMeans) {
  expect_golden("stats complexity-means " + data("published_counts.json"),
                "complexity_means.txt");
}

TEST(Cli, AnalyzeTable) {
  expect_golden("analyze " + data("fixture10.json") + " --label fixture", "analyze.txt");
}

TEST(Cli, AnalyzeJson) {
  expect_golden("analyze " + data("fixture10.json") + " --label fixture --json",
                "analyze.json");
}

TEST(Cli, AnalyzePriors) {
  expect_golden("analyze " + data("fixture10.json") + " --label priors --xi2 auto --priors " +
                    data("priors10.json"),
                "analyze_priors.txt");
}

// q1: sigma 0.6 is above xi1 and p = 0.4 clears a 0.3 threshold, so it joins
// the coherent set as one more miss.
TEST(Cli, AnalyzePriorShiftsOneRecord) {
  const fs::path priors = fs::temp_directory_path() / "argfore_cli_priors.json";
  std::ofstream(priors) << R"({"q1": 0.3})";
  CliResult r = run("analyze " + data("fixture10.json") + " --json --xi2 auto --priors " +
                    priors.string());
  fs::remove(priors);
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["coherent_total"], 8);
  EXPECT_EQ(j["coherent_correct"], 5);
  EXPECT_EQ(j["coherent_accuracy"], 0.625);
}

TEST(Cli, DebateCoherence) {
  expect_golden("debate coherence " + data("worked_debate.json") + " --user u",
                "coherence.txt");
}

TEST(Cli, GenerateIsDeterministic) {
  expect_golden("variants generate --profile vb --band gt50 --seed 3", "generate_vb.json");
}

TEST(Cli, GenerateThenClassify) {
  const fs::path tmp = fs::temp_directory_path() / "argfore_cli_variant.json";
  for (const char* code : {"s", "v", "b", "d", "vb", "vd", "db", "vdb"}) {
    CliResult g = run(std::string("variants generate --profile ") + code +
                " --band lt50 --seed 11 -o " + tmp.string());
    ASSERT_EQ(g.status, 0) << code;
    auto doc = nlohmann::json::parse(slurp(tmp));
    std::string user = doc["users"][0];
    CliResult c = run("variants classify " + tmp.string() + " --user " + user + " --json");
    ASSERT_EQ(c.status, 0);
    EXPECT_EQ(nlohmann::json::parse(c.out)["code"], code);
  }
  fs::remove(tmp);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("stats mcnemar --yy 1 --yn 0 --ny 0 --nn 1").status, 1);
  EXPECT_EQ(run("debate coherence " + data("worked_debate.json") + " --user nobody").status, 1);
  const fs::path bad = fs::temp_directory_path() / "argfore_cli_bad.json";
  std::ofstream(bad) << R"([{"question_id": "q", "prediction": 2}])";
  EXPECT_EQ(run("analyze " + bad.string()).status, 1);
  fs::remove(bad);
  // a missing input path is a usage error
  EXPECT_EQ(run("analyze /nonexistent/x.json").status, 2);
  EXPECT_EQ(run("analyze " + data("fixture10.json") + " --xi2 auto").status, 2);
  EXPECT_EQ(run("analyze " + data("fixture10.json") + " --xi2 1.5").status, 2);
  EXPECT_EQ(run("variants generate --profile zz --band gt50 --seed 1").status, 2);
  EXPECT_EQ(run("stats mcnemar --yy 1").status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
  EXPECT_EQ(run("").status, 2);
}

}  // namespace
