// Copyright 2026 The mfscore Authors.
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


#include "mfscore/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

namespace mfscore {
namespace {

namespace fs = std::filesystem;

const std::string kData = MFSCORE_TEST_DATA_DIR;

constexpr char kGold[] =
    "# ::id s1\n# ::snt The cat plays.\n(p / play-01 :ARG0 (c / cat))\n\n"
    "# ::id s2\n# ::snt The dog sleeps.\n(s / sleep-01 :ARG0 (d / dog))\n";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("mfscore_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& contents) {
    fs::path path = dir_ / name;
    std::ofstream(path, std::ios::binary) << contents;
    return path.string();
  }

  std::string Read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  int Run(std::vector<std::string> args) {
    args.insert(args.begin(), "mfscore");
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  std::string Probs(const std::vector<std::pair<std::string, double>>& rows) {
    std::string text;
    for (const auto& [id, p] : rows) {
      text += "{\"id\": \"" + id + "\", \"token_probs\": [" + std::to_string(p) +
              "], \"lm\": \"gpt2\", \"mode\": \"uni\"}\n";
    }
    return text;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, ScoreWithoutProbabilitiesWarnsAndReportsMeaningOnly) {
  std::string gold = Write("gold.amr", kGold);
  std::string out = (dir_ / "report.json").string();
  ASSERT_EQ(Run({"score", "--gold", gold, "--system", "same=" + gold, "--out", out}), 0)
      << err_.str();
  EXPECT_NE(err_.str().find("no token probabilities"), std::string::npos);
  nlohmann::json j = nlohmann::json::parse(Read(out));
  EXPECT_EQ(j["systems"][0]["meaning"]["f1"], 1.0);
  EXPECT_TRUE(j["systems"][0]["form"].is_null());
  EXPECT_EQ(j["systems"][0]["mf"].size(), 1u);
  EXPECT_NE(out_.str().find("100.0(1)"), std::string::npos);
}

TEST_F(CliTest, ScoreWithProbabilities) {
  std::string gold = Write("gold.amr", kGold);
  std::string sys = Write(
      "sys.amr",
      "# ::id s2\n(s / sleep-01 :ARG0 (d / cat))\n\n# ::id s1\n(p / play-01 :ARG0 (c / cat))\n");
  std::string cand = Write("cand.jsonl", Probs({{"s1", 0.6}, {"s2", 0.1}}));
  std::string ref = Write("ref.jsonl", Probs({{"s1", 0.4}, {"s2", 0.9}}));
  std::string out = (dir_ / "report.json").string();
  ASSERT_EQ(Run({"score", "--gold", gold, "--system", "s=" + sys, "--cand-probs", cand,
                 "--ref-probs", ref, "--beta", "1,0.5", "--out", out}),
            0)
      << err_.str();
  nlohmann::json j = nlohmann::json::parse(Read(out));
  EXPECT_EQ(j["config"]["beta"], (nlohmann::json{"0.5", "1"}));
  EXPECT_EQ(j["systems"][0]["form"], 0.5);
  double meaning = j["systems"][0]["meaning"]["f1"];
  EXPECT_NEAR(meaning, 7.0 / 8.0, 1e-12);
  EXPECT_NEAR(j["systems"][0]["mf"]["1"].get<double>(), 2 * meaning * 0.5 / (meaning + 0.5),
              1e-12);
}

TEST_F(CliTest, ExitCodes) {
  std::string gold = Write("gold.amr", kGold);
  std::string partial = Write("partial.amr", "# ::id s1\n(p / play-01 :ARG0 (c / cat))\n");
  std::string broken =
      Write("broken.amr",
            "# ::id s1\n(p / play-01 :ARG0 (c / cat)\n\n# ::id s2\n(s / sleep-01)\n");
  EXPECT_EQ(Run({"score", "--gold", gold, "--system", "x=" + partial}), kExitMismatch);
  EXPECT_NE(err_.str().find("s2"), std::string::npos);
  EXPECT_EQ(Run({"score", "--gold", gold, "--system", "x=" + broken}), kExitParse);
  EXPECT_EQ(Run({"score", "--gold", gold, "--system", "x=" + broken, "--allow-failed-parses"}),
            kExitOk);
  EXPECT_NE(err_.str().find("warning"), std::string::npos);
  EXPECT_EQ(Run({"score", "--gold", gold, "--system", "x=" + (dir_ / "nope.amr").string()}),
            kExitUsage);
  EXPECT_EQ(Run({"score", "--gold", broken, "--system", "x=" + gold}), kExitParse);
  EXPECT_EQ(Run({"score", "--gold", gold}), kExitUsage);
  EXPECT_EQ(Run({"score", "--gold", gold, "--system", gold}), kExitUsage);
  EXPECT_EQ(Run({"score", "--gold", gold, "--system", "x=" + gold, "--tol", "0.7"}), kExitUsage);
  EXPECT_EQ(Run({"score", "--gold", gold, "--system", "x=" + gold, "--beta", "-1"}), kExitUsage);
  EXPECT_EQ(Run({"score", "--gold", gold, "--system", "x=" + gold, "--subtasks", "bogus"}),
            kExitUsage);
  EXPECT_EQ(Run({"score", "--gold", gold, "--system", "x=" + gold, "--sim", "embed"}),
            kExitUsage);
  EXPECT_EQ(Run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(Run({"explain", "--gold", gold, "--system", "x=" + gold, "--id", "s9"}),
            kExitMismatch);
}

TEST_F(CliTest, ExplainIdenticalGraphHasNoDeviations) {
  std::string gold = Write("gold.amr", kGold);
  ASSERT_EQ(Run({"explain", "--gold", gold, "--system", "x=" + gold, "--id", "s1"}), 0)
      << err_.str();
  EXPECT_NE(out_.str().find("no deviations"), std::string::npos);
  EXPECT_NE(out_.str().find("The cat plays."), std::string::npos);
}

TEST_F(CliTest, ExplainOneExtraRelation) {
  std::string gold = Write("gold.amr", kGold);
  std::string sys = Write("sys.amr",
                          "# ::id s1\n(p / play-01 :ARG0 (c / cat) :ARG1 c)\n\n"
                          "# ::id s2\n(s / sleep-01 :ARG0 (d / dog))\n");
  ASSERT_EQ(Run({"explain", "--gold", gold, "--system", "x=" + sys, "--id", "s1"}), 0);
  EXPECT_NE(out_.str().find("ARG1(p, c)"), std::string::npos);
  EXPECT_EQ(out_.str().find("no deviations"), std::string::npos);
}

TEST_F(CliTest, ExplainMisattachedNegation) {
  ASSERT_EQ(Run({"explain", "--gold", kData + "/negation_gold.amr", "--system",
                 "c1=" + kData + "/negation_cand1.amr", "--system",
                 "c2=" + kData + "/negation_cand2.amr", "--id", "cause"}),
            0)
      << err_.str();
  std::string text = out_.str();
  EXPECT_NE(text.find("misattached: on responsible-01, expected fear-01"), std::string::npos);
  EXPECT_NE(text.find("negation"), std::string::npos);
}

TEST_F(CliTest, CompareIdenticalAndRankedReports) {
  std::string gold = Write("gold.amr", kGold);
  std::string half = Write("half.amr",
                           "# ::id s1\n(p / play-01 :ARG0 (c / cat))\n\n"
                           "# ::id s2\n(s / eat-01 :ARG0 (d / cat))\n");
  std::string worse = Write("worse.amr",
                            "# ::id s1\n(p / run-01 :ARG0 (c / cow))\n\n"
                            "# ::id s2\n(s / eat-01 :ARG0 (d / cat))\n");
  std::string a = (dir_ / "a.json").string();
  std::string b = (dir_ / "b.json").string();
  std::vector<std::string> common = {"score", "--gold", gold, "--system", "best=" + gold,
                                     "--system", "mid=" + half, "--system", "low=" + worse};
  std::vector<std::string> run_a = common;
  run_a.insert(run_a.end(), {"--out", a});
  std::vector<std::string> run_b = common;
  run_b.insert(run_b.end(), {"--out", b});
  ASSERT_EQ(Run(run_a), 0) << err_.str();
  ASSERT_EQ(Run(run_b), 0);
  EXPECT_EQ(Read(a), Read(b));
  ASSERT_EQ(Run({"compare", "A=" + a, "B=" + b, "--metric", "meaning"}), 0) << err_.str();
  std::string text = out_.str();
  EXPECT_NE(text.find("best    100.0(1)      100.0(1)"), std::string::npos) << text;
  EXPECT_NE(text.find("spearman"), std::string::npos);
  EXPECT_NE(text.find("1.000"), std::string::npos);
  EXPECT_EQ(text.find("n/a"), std::string::npos);
  EXPECT_EQ(Run({"compare", a}), kExitUsage);
  EXPECT_EQ(Run({"compare", a, b, "--metric", "form"}), kExitUsage);
}

TEST_F(CliTest, CompareMismatchedSystemSets) {
  std::string gold = Write("gold.amr", kGold);
  std::string a = (dir_ / "a.json").string();
  std::string b = (dir_ / "b.json").string();
  ASSERT_EQ(Run({"score", "--gold", gold, "--system", "x=" + gold, "--out", a}), 0);
  ASSERT_EQ(Run({"score", "--gold", gold, "--system", "y=" + gold, "--out", b}), 0);
  EXPECT_EQ(Run({"compare", a, b}), kExitMismatch);
}

TEST(CmdCompareTest, ThreeReportsGiveSquareMatrix) {
  auto report = [](std::vector<double> meaning) {
    ScoreReport r;
    const char* names[] = {"R'19", "G'19", "Wb'20", "C'20", "Mb'20", "M'20", "W'20"};
    for (std::size_t i = 0; i < meaning.size(); ++i) {
      SystemScores s;
      s.name = names[i];
      s.meaning.f1 = meaning[i] / 100.0;
      r.systems.push_back(s);
    }
    return r;
  };
  std::vector<std::pair<std::string, ScoreReport>> reports = {
      {"TTSA", report({66.9, 69.7, 67.3, 69.1, 68.9, 69.8, 70.5})},
      {"GPLA", report({70.1, 72.2, 70.2, 70.4, 70.5, 72.5, 73.1})},
      {"GSII", report({71.9, 73.9, 71.5, 72.2, 73.7, 74.5, 75.3})}};
  std::string text = CmdCompare(reports, {"meaning"});
  // Rank columns for TTSA, GPLA, GSII.
  EXPECT_NE(text.find("R'19    66.9(7)       70.1(7)       71.9(6)"), std::string::npos) << text;
  EXPECT_NE(text.find("W'20    70.5(1)       73.1(1)       75.3(1)"), std::string::npos);
  EXPECT_NE(text.find("0.964"), std::string::npos);
  std::size_t spearman = text.find("spearman\n");
  ASSERT_NE(spearman, std::string::npos);
  std::istringstream rows(text.substr(spearman));
  std::string line;
  std::getline(rows, line);
  std::getline(rows, line);
  for (int i = 0; i < 3; ++i) {
    ASSERT_TRUE(std::getline(rows, line));
    std::istringstream cells(line);
    std::string label;
    cells >> label;
    int count = 0;
    std::string cell;
    while (cells >> cell) ++count;
    EXPECT_EQ(count, 3) << line;
  }
}

TEST_F(CliTest, SeedFromEnvironment) {
  std::string gold = Write("gold.amr", kGold);
  std::string out = (dir_ / "r.json").string();
  ::setenv("MFSCORE_SEED", "7", 1);
  int code = Run({"score", "--gold", gold, "--system", "x=" + gold, "--out", out});
  ::unsetenv("MFSCORE_SEED");
  ASSERT_EQ(code, 0);
  EXPECT_EQ(nlohmann::json::parse(Read(out))["config"]["seed"], 7);
  ASSERT_EQ(Run({"score", "--gold", gold, "--system", "x=" + gold, "--seed", "9", "--out", out}),
            0);
  EXPECT_EQ(nlohmann::json::parse(Read(out))["config"]["seed"], 9);
  EXPECT_EQ(Run({"score", "--gold", gold, "--system", "x=" + gold, "--seed", "abc"}), kExitUsage);
}

TEST_F(CliTest, ParsedReferenceGivesApprUb) {
  std::string gold = Write("gold.amr", kGold);
  std::string parsed = Write("parsed.amr",
                             "# ::id s1\n(p / play-01 :ARG0 (c / cat))\n\n"
                             "# ::id s2\n(s / sleep-01 :ARG0 (d / cat))\n");
  std::string out = (dir_ / "r.json").string();
  ASSERT_EQ(Run({"score", "--gold", gold, "--system", "x=" + gold, "--parsed-ref", parsed,
                 "--out", out}),
            0)
      << err_.str();
  nlohmann::json j = nlohmann::json::parse(Read(out));
  EXPECT_NEAR(j["appr_ub"]["f1"].get<double>(), 7.0 / 8.0, 1e-12);
  EXPECT_TRUE(j["systems"][0]["exceeds_appr_ub"].get<bool>());
  EXPECT_NE(err_.str().find("exceeds apprUB"), std::string::npos);
}

}  // namespace
}  // namespace mfscore
