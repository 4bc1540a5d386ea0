// Copyright 2026 The CIR Authors
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

// Runs the built cir executable end to end.

#include <cstdlib>
#include <fstream>
#include <regex>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "support/cli_runner.hpp"
#include "support/fixture_io.hpp"

namespace cir {
namespace {

namespace fs = std::filesystem;
using testing::quote;
using testing::read_file;
using testing::run_cli;
using testing::TempDir;

const fs::path kFixtures = CIR_FIXTURE_DIR;
const fs::path kData = CIR_DEFAULT_DATA_DIR;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Short schedules so a model trains in about a second.
const std::string kQuick =
    " --embedding-epochs 5 --mlp-epochs 5 --cv-folds 2 --tlda-iterations 20 --threads 1";

// Preprocessed synthetic corpus plus a quickly trained model in `dir`.
void quick_model(const TempDir& dir) {
  auto r = run_cli("preprocess --input " + quote(kData / "synthetic_500.jsonl") + " --output " +
                   quote(dir / "pre.jsonl"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  r = run_cli("train --input " + quote(dir / "pre.jsonl") + " --model-dir " +
              quote(dir / "m") + kQuick);
  ASSERT_EQ(r.exit_code, 0) << r.output;
}

std::string rank_into(const TempDir& dir, const std::string& out, const std::string& extra = "",
                      const std::string& env = "") {
  const auto r = run_cli("rank --input " + quote(dir / "pre.jsonl") + " --model-dir " +
                             quote(dir / "m") + " --output-dir " + quote(dir / out) + kQuick +
                             extra,
                         env);
  EXPECT_EQ(r.exit_code, 0) << r.output;
  return read_file(dir / out / "need_ranking.tsv") +
         read_file(dir / out / "availability_ranking.tsv");
}

TEST(CliPreprocessTest, MatchesFrozenGolden) {
  const TempDir tmp("cir_cli");
  const auto r = run_cli("preprocess --input " + quote(kFixtures / "cli_tweets.jsonl") +
                         " --output " + quote(tmp / "out.jsonl"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(read_file(tmp / "out.jsonl"), read_file(kFixtures / "cli_preprocessed.jsonl"));
}

TEST(CliPreprocessTest, TsvInputGivesSameTokens) {
  const TempDir tmp("cir_cli");
  write_text(tmp / "in.tsv", "t1\tNeed\tUrgently need drinking water and tents in Gorkha! "
                             "Call 9841234567 @NepalRedCross #NepalEarthquake\n");
  const auto r = run_cli("preprocess --input " + quote(tmp / "in.tsv") + " --output " +
                         quote(tmp / "out.jsonl"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const std::string golden = read_file(kFixtures / "cli_preprocessed.jsonl");
  EXPECT_EQ(read_file(tmp / "out.jsonl"), golden.substr(0, golden.find('\n') + 1));
}

TEST(CliPreprocessTest, EmptyCorpusGivesEmptyOutput) {
  const TempDir tmp("cir_cli");
  write_text(tmp / "empty.jsonl", "");
  const auto r = run_cli("preprocess --input " + quote(tmp / "empty.jsonl") + " --output " +
                         quote(tmp / "out.jsonl"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(read_file(tmp / "out.jsonl"), "");
}

TEST(CliPreprocessTest, MissingInputNamesThePath) {
  const TempDir tmp("cir_cli");
  const fs::path missing = tmp / "no_such_file.jsonl";
  const auto r = run_cli("preprocess --input " + quote(missing) + " --output " +
                         quote(tmp / "out.jsonl"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find(missing.string()), std::string::npos) << r.output;
}

TEST(CliPreprocessTest, MalformedInputIsDataError) {
  const TempDir tmp("cir_cli");
  write_text(tmp / "bad.jsonl", "{\"id\": \"x\", \"text\": \"ok\"}\nnot json\n");
  const auto r = run_cli("preprocess --input " + quote(tmp / "bad.jsonl") + " --output " +
                         quote(tmp / "out.jsonl"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find(":2"), std::string::npos) << r.output;
}

TEST(CliUsageTest, ParseErrorsExitOne) {
  EXPECT_EQ(run_cli("").exit_code, 1);
  EXPECT_EQ(run_cli("stats").exit_code, 1);  // --input missing
  EXPECT_EQ(run_cli("stats --input x --bogus").exit_code, 1);
  EXPECT_EQ(run_cli("frobnicate").exit_code, 1);
  EXPECT_EQ(run_cli("--seed notanumber stats --input x").exit_code, 1);
  EXPECT_EQ(run_cli("--help").exit_code, 0);
}

TEST(CliUsageTest, InvalidValuesExitOne) {
  const TempDir tmp("cir_cli");
  write_text(tmp / "pre.jsonl", "");
  const std::string in = " --input " + quote(tmp / "pre.jsonl");
  EXPECT_EQ(run_cli("stats" + in + " --threshold-c 1.5").exit_code, 1);
  EXPECT_EQ(run_cli("stats" + in + " --threshold-c 0").exit_code, 1);
  EXPECT_EQ(run_cli("stats" + in + " --cv-folds 1").exit_code, 1);
  EXPECT_EQ(run_cli("evaluate --rankings-dir " + quote(tmp.path()) + " --format xml").exit_code,
            1);
}

TEST(CliUsageTest, UnknownConfigKeyIsRejected) {
  const TempDir tmp("cir_cli");
  write_text(tmp / "pre.jsonl", "");
  write_text(tmp / "bad.ini", "embedding_epochs = 3\n");
  const auto r =
      run_cli("--config " + quote(tmp / "bad.ini") + " stats --input " + quote(tmp / "pre.jsonl"));
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_EQ(run_cli("stats --input " + quote(tmp / "pre.jsonl"),
                    "CIR_CONFIG=" + quote(tmp / "missing.ini"))
                .exit_code,
            1);
}

TEST(CliTrainTest, SyntheticCorpusCrossValidation) {
  const TempDir tmp("cir_cli");
  auto r = run_cli("preprocess --input " + quote(kData / "synthetic_500.jsonl") + " --output " +
                   quote(tmp / "pre.jsonl"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  // Longer embedding schedule through the config file named by the env var.
  write_text(tmp / "cir.ini", "# synthetic corpus\nembedding-epochs = 100\nseed = 42\n");
  r = run_cli("train --input " + quote(tmp / "pre.jsonl") + " --model-dir " +
                  quote(tmp / "m") + " --threads 1",
              "CIR_CONFIG=" + quote(tmp / "cir.ini"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  ASSERT_TRUE(fs::is_regular_file(tmp / "m" / "model.bin"));
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.output, m, std::regex(R"(\nmean\s+500\s+([0-9.]+)\s+([0-9.]+))")))
      << r.output;
  EXPECT_GE(std::stod(m[1]), 0.95) << r.output;
  EXPECT_GE(std::stod(m[1]) - std::stod(m[2]), 0.2) << r.output;
  EXPECT_NE(r.output.find("10-fold"), std::string::npos);
}

TEST(CliTrainTest, RerunGivesIdenticalModelBytes) {
  const TempDir a("cir_cli"), b("cir_cli");
  quick_model(a);
  quick_model(b);
  EXPECT_TRUE(read_file(a / "m" / "model.bin") == read_file(b / "m" / "model.bin"));
}

TEST(CliTrainTest, SeedChangesTheModel) {
  const TempDir tmp("cir_cli");
  quick_model(tmp);
  const auto r = run_cli("train --input " + quote(tmp / "pre.jsonl") + " --model-dir " +
                         quote(tmp / "m2") + kQuick + " --seed 43");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_FALSE(read_file(tmp / "m" / "model.bin") == read_file(tmp / "m2" / "model.bin"));
}

TEST(CliTrainTest, SingleClassCorpusFails) {
  const TempDir tmp("cir_cli");
  write_text(tmp / "one.jsonl",
             "{\"id\":\"a\",\"text\":\"need water now\",\"label\":\"Need\"}\n"
             "{\"id\":\"b\",\"text\":\"need water please\",\"label\":\"Need\"}\n");
  auto r = run_cli("preprocess --input " + quote(tmp / "one.jsonl") + " --output " +
                   quote(tmp / "pre.jsonl"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  r = run_cli("train --input " + quote(tmp / "pre.jsonl") + " --model-dir " + quote(tmp / "m"));
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.output.find("both"), std::string::npos) << r.output;
  EXPECT_FALSE(fs::exists(tmp / "m" / "model.bin"));
}

TEST(CliRankTest, OutputsAndThresholdFlag) {
  const TempDir tmp("cir_cli");
  quick_model(tmp);
  const std::string base = rank_into(tmp, "base");
  for (const char* f : {"need_ranking.tsv", "availability_ranking.tsv", "buckets.json"}) {
    EXPECT_TRUE(fs::is_regular_file(tmp / "base" / f)) << f;
  }
  // Every tweet lands in exactly one of the two rankings.
  std::size_t lines = 0;
  for (char ch : base) lines += ch == '\n';
  EXPECT_EQ(lines, 500u);
  const auto buckets = nlohmann::json::parse(read_file(tmp / "base" / "buckets.json"));
  EXPECT_EQ(buckets.at("k20_need").size(), 20u);

  const std::string loose = rank_into(tmp, "loose", " --threshold-c 0.5");
  EXPECT_NE(loose, base);
  EXPECT_EQ(rank_into(tmp, "loose2", " --threshold-c 0.5"), loose);

  // Config file value, then a flag overriding it.
  write_text(tmp / "c.ini", "threshold-c = 0.5\n");
  EXPECT_EQ(rank_into(tmp, "cfg", "", "CIR_CONFIG=" + quote(tmp / "c.ini")), loose);
  EXPECT_EQ(rank_into(tmp, "cfg2", " --threshold-c 0.8", "CIR_CONFIG=" + quote(tmp / "c.ini")),
            base);
}

TEST(CliRankTest, MissingModelFails) {
  const TempDir tmp("cir_cli");
  write_text(tmp / "pre.jsonl", read_file(kFixtures / "cli_preprocessed.jsonl"));
  const auto r = run_cli("rank --input " + quote(tmp / "pre.jsonl") + " --model-dir " +
                         quote(tmp / "nowhere") + " --output-dir " + quote(tmp / "out"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("model.bin"), std::string::npos) << r.output;
}

TEST(CliRankTest, CorruptModelIsDataError) {
  const TempDir tmp("cir_cli");
  write_text(tmp / "pre.jsonl", read_file(kFixtures / "cli_preprocessed.jsonl"));
  fs::create_directories(tmp / "m");
  write_text(tmp / "m" / "model.bin", "CIRM garbage");
  const auto r = run_cli("rank --input " + quote(tmp / "pre.jsonl") + " --model-dir " +
                         quote(tmp / "m") + " --output-dir " + quote(tmp / "out"));
  EXPECT_EQ(r.exit_code, 2) << r.output;
}

// Need: n1 rel, n2 not, n3 rel; n9 relevant but never retrieved.
//   P@100 = 2/100, R@1000 = 2/3, AP = (1/1 + 2/3) / 3 = 5/9
// Availability: a1 not, a2 rel (only relevant doc).
//   P@100 = 1/100, R@1000 = 1, AP = (1/2) / 1 = 1/2
TEST(CliEvaluateTest, HandComputedMetricsTextAndJsonAgree) {
  const TempDir tmp("cir_cli");
  fs::create_directories(tmp / "r");
  write_text(tmp / "r" / "need_ranking.tsv",
             "1\tn1\tNeed\t3\n2\tn2\tNeed\t2\n3\tn3\tNeed\t1\n");
  write_text(tmp / "r" / "availability_ranking.tsv",
             "1\ta1\tAvailability\t0.5\n2\ta2\tAvailability\t-1\n");
  write_text(tmp / "q.tsv",
             "n1\tNeed\t1\nn2\tNeed\t0\nn3\tNeed\t2\nn9\tNeed\t1\na2\tAvailability\t1\n");
  const std::string args = "evaluate --rankings-dir " + quote(tmp / "r") + " --qrels " +
                           quote(tmp / "q.tsv");
  const auto text = run_cli(args);
  ASSERT_EQ(text.exit_code, 0) << text.output;
  const auto js = run_cli(args + " --format json --output " + quote(tmp / "report.json"));
  ASSERT_EQ(js.exit_code, 0) << js.output;
  const auto j = nlohmann::json::parse(read_file(tmp / "report.json"));
  const auto& run = j.at("run");
  EXPECT_NEAR(run.at("need").at("precision_at_100").get<double>(), 0.02, 1e-15);
  EXPECT_NEAR(run.at("need").at("recall_at_1000").get<double>(), 2.0 / 3, 1e-15);
  EXPECT_NEAR(run.at("need").at("average_precision").get<double>(), 5.0 / 9, 1e-15);
  EXPECT_NEAR(run.at("availability").at("precision_at_100").get<double>(), 0.01, 1e-15);
  EXPECT_NEAR(run.at("availability").at("recall_at_1000").get<double>(), 1.0, 1e-15);
  EXPECT_NEAR(run.at("availability").at("average_precision").get<double>(), 0.5, 1e-15);
  EXPECT_NEAR(run.at("map").get<double>(), (5.0 / 9 + 0.5) / 2, 1e-15);

  // The text table shows the same numbers to four places.
  EXPECT_NE(text.output.find("0.0200    0.6667    0.5556"), std::string::npos) << text.output;
  EXPECT_NE(text.output.find("0.0100    1.0000    0.5000"), std::string::npos) << text.output;
  EXPECT_NE(text.output.find("0.5278"), std::string::npos) << text.output;
  EXPECT_NE(text.output.find("DIA_LAB_NITK [published]"), std::string::npos);
  EXPECT_NE(text.output.find("NU_Team [published]"), std::string::npos);
  EXPECT_NE(text.output.find("0.0681"), std::string::npos);
}

TEST(CliEvaluateTest, NoRelevantDocumentsIsDataError) {
  const TempDir tmp("cir_cli");
  fs::create_directories(tmp / "r");
  write_text(tmp / "r" / "need_ranking.tsv", "1\tn1\tNeed\t3\n");
  write_text(tmp / "r" / "availability_ranking.tsv", "1\ta1\tAvailability\t1\n");
  write_text(tmp / "q.tsv", "n1\tNeed\t1\n");
  const auto r = run_cli("evaluate --rankings-dir " + quote(tmp / "r") + " --qrels " +
                         quote(tmp / "q.tsv"));
  EXPECT_EQ(r.exit_code, 2) << r.output;
}

// Hand counts from the golden preprocessed fixture:
//   Need t1 t3 t4 t6: question 0+1+0+2, link 0+0+0+1, hash 1, mention 1+1, number 1+1+1
//   Availability t2 t5 t7 t8: link 1, hash 1, number 1
TEST(CliStatsTest, CorpusTable) {
  const auto r = run_cli("stats --input " + quote(kFixtures / "cli_preprocessed.jsonl"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_TRUE(std::regex_search(r.output, std::regex(R"(Need\s+3\s+1\s+1\s+2\s+3\n)")))
      << r.output;
  EXPECT_TRUE(std::regex_search(r.output, std::regex(R"(Availability\s+0\s+1\s+1\s+0\s+1\n)")))
      << r.output;
}

TEST(SyntheticCorpusTest, BundledFilesRegenerate) {
  const TempDir tmp("cir_cli");
  const std::string cmd = quote(CIR_SYNTH_PATH) + " --tweets " + quote(tmp / "t.jsonl") +
                          " --qrels " + quote(tmp / "q.tsv");
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(read_file(tmp / "t.jsonl") == read_file(kData / "synthetic_500.jsonl"));
  EXPECT_TRUE(read_file(tmp / "q.tsv") == read_file(kData / "synthetic_500_qrels.tsv"));
}

}  // namespace
}  // namespace cir
