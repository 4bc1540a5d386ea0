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

// cir: command-line driver for the categorical retrieval pipeline.
//
//   cir preprocess --input tweets.jsonl --output pre.jsonl
//   cir train      --input pre.jsonl --model-dir model/
//   cir rank       --input pre.jsonl --model-dir model/ --output-dir out/
//   cir evaluate   --rankings-dir out/ --qrels qrels.tsv
//   cir stats      --input pre.jsonl
//
// Global options may be given before or after the subcommand, or in a flat
// key = value config file (--config, default from $CIR_CONFIG). Flags win over
// the file. Exit codes: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cir/corpus.hpp"
#include "cir/evaluation.hpp"
#include "cir/pipeline.hpp"
#include "cir/preprocess.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kModelFile = "model.bin";
constexpr const char* kNeedRanking = "need_ranking.tsv";
constexpr const char* kAvailabilityRanking = "availability_ranking.tsv";
constexpr const char* kBucketsFile = "buckets.json";

struct Options {
  cir::PipelineConfig pipeline;
  std::string data_dir = CIR_DEFAULT_DATA_DIR;
  std::string model_dir;
  std::string qrels;
  std::vector<std::string> negative_keywords = {"quake"};
  double lambda = 0;

  // subcommand arguments
  std::string input;
  std::string output;
  std::string output_dir;
  std::string rankings_dir;
  std::string format;
};

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw cir::UsageError(what + " path not given");
  if (!fs::is_regular_file(path)) throw cir::DataError(what + " not found: " + path);
}

void require_dir_option(const std::string& path, const std::string& flag) {
  if (path.empty()) throw cir::UsageError(flag + " is required");
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cir::DataError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw cir::DataError("write failed: " + path.string());
}

cir::TweetFormat input_format(const Options& o) {
  if (!o.format.empty()) return cir::parse_tweet_format(o.format);
  return fs::path(o.input).extension() == ".tsv" ? cir::TweetFormat::kTsv
                                                 : cir::TweetFormat::kJsonl;
}

void cmd_preprocess(const Options& o) {
  require_file(o.input, "input");
  if (o.output.empty()) throw cir::UsageError("--output is required");
  if (!fs::is_directory(o.data_dir)) throw cir::DataError("data directory not found: " + o.data_dir);
  const auto tweets = cir::load_tweets(o.input, input_format(o));
  const auto config = cir::PreprocessConfig::load_default(o.data_dir);
  const auto processed = cir::preprocess_batch(tweets, config, o.pipeline.threads);
  auto out = open_out(o.output);
  cir::write_preprocessed_jsonl(out, processed);
  finish(out, o.output);
  std::cerr << "preprocessed " << processed.size() << " tweets -> " << o.output << "\n";
}

void cmd_train(const Options& o) {
  require_file(o.input, "input");
  require_dir_option(o.model_dir, "--model-dir");
  const auto tweets = cir::load_preprocessed(o.input);
  const auto result = cir::train_pipeline(tweets, o.pipeline);
  const fs::path model_path = fs::path(o.model_dir) / kModelFile;
  fs::create_directories(o.model_dir);
  cir::save_model(model_path, result.model);
  std::cout << o.pipeline.cv_folds << "-fold cross-validation (" << tweets.size()
            << " tweets)\n";
  cir::write_cv_table(std::cout, result.cv);
  std::cerr << "model -> " << model_path.string() << "\n";
}

void cmd_rank(const Options& o) {
  require_file(o.input, "input");
  require_dir_option(o.model_dir, "--model-dir");
  require_dir_option(o.output_dir, "--output-dir");
  const auto model = cir::load_model(fs::path(o.model_dir) / kModelFile);
  const auto tweets = cir::load_preprocessed(o.input);
  const auto ranked = cir::rank_pipeline(tweets, model, o.pipeline);

  const fs::path dir(o.output_dir);
  const auto emit = [&](const char* name, const auto& write) {
    const fs::path path = dir / name;
    auto out = open_out(path);
    write(out);
    finish(out, path);
  };
  emit(kNeedRanking, [&](std::ostream& out) { cir::write_ranking_tsv(out, ranked.need); });
  emit(kAvailabilityRanking,
       [&](std::ostream& out) { cir::write_ranking_tsv(out, ranked.availability); });
  emit(kBucketsFile, [&](std::ostream& out) { cir::write_buckets_json(out, ranked.buckets); });
  std::cerr << "ranked " << ranked.need.size() << " need and " << ranked.availability.size()
            << " availability tweets -> " << dir.string() << "\n";
}

void cmd_evaluate(const Options& o) {
  const std::string format = o.format.empty() ? "text" : o.format;
  if (format != "text" && format != "json") throw cir::UsageError("--format must be text or json");
  require_dir_option(o.rankings_dir, "--rankings-dir");
  const fs::path dir(o.rankings_dir);
  require_file((dir / kNeedRanking).string(), "need ranking");
  require_file((dir / kAvailabilityRanking).string(), "availability ranking");
  require_file(o.qrels, "qrels");
  const auto qrels = cir::load_qrels(o.qrels);
  const auto need = cir::ranked_ids(cir::load_ranking(dir / kNeedRanking));
  const auto availability = cir::ranked_ids(cir::load_ranking(dir / kAvailabilityRanking));
  const auto report = cir::build_report(need, availability, qrels);

  const auto write = [&](std::ostream& out) {
    if (format == "json") {
      cir::write_report_json(out, report);
    } else {
      cir::write_report_text(out, report);
    }
  };
  if (o.output.empty()) {
    write(std::cout);
  } else {
    auto out = open_out(o.output);
    write(out);
    finish(out, o.output);
  }
}

void cmd_stats(const Options& o) {
  require_file(o.input, "input");
  const auto tweets = cir::load_preprocessed(o.input);
  cir::write_corpus_stats_table(std::cout, cir::corpus_stats(tweets));
}

void add_global_options(CLI::App& app, Options& o) {
  auto& p = o.pipeline;
  app.set_config("--config", "", "flat key = value config file")->envname("CIR_CONFIG");
  app.add_option("--seed", p.seed, "global seed")->capture_default_str();
  app.add_option("--threads", p.threads, "worker threads (1 = deterministic, 0 = all cores)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--data-dir", o.data_dir, "stopword lists and transliteration table")
      ->capture_default_str();
  app.add_option("--model-dir", o.model_dir, "directory holding model.bin");
  app.add_option("--qrels", o.qrels, "relevance judgments (id, category, grade)");

  app.add_option("--embedding-epochs", p.embedding.epochs)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--embedding-negative", p.embedding.negative)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--embedding-lr", p.embedding.learning_rate)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--embedding-subsample", p.embedding.subsample)->capture_default_str()->check(CLI::NonNegativeNumber);
  app.add_option("--min-count", p.embedding.min_count)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--infer-steps", p.embedding.infer_steps)->capture_default_str()->check(CLI::PositiveNumber);

  app.add_option("--mlp-hidden", p.mlp.hidden)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--mlp-epochs", p.mlp.epochs)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--mlp-lr", p.mlp.learning_rate)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--mlp-momentum", p.mlp.momentum)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  app.add_option("--mlp-batch-size", p.mlp.batch_size)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--class-weights", p.mlp.class_weights, "inverse-frequency loss weights")
      ->capture_default_str();
  app.add_option("--standardize-stats", p.mlp.standardize_stats)->capture_default_str();
  app.add_option("--cv-folds", p.cv_folds)->capture_default_str()->check(CLI::Range(2, 1000));

  app.add_option("--tlda-topics", p.tlda.topics)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tlda-alpha", p.tlda.alpha, "0 means 50 / topics")->capture_default_str();
  app.add_option("--tlda-beta", p.tlda.beta)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tlda-gamma", p.tlda.gamma)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tlda-iterations", p.tlda.iterations)->capture_default_str()->check(CLI::PositiveNumber);

  app.add_option("--threshold-c", p.rank.threshold, "edit-similarity threshold C")
      ->capture_default_str();
  app.add_option("--negative-keywords", o.negative_keywords, "comma-separated")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--lambda", o.lambda, "fixed lambda instead of the pooled maximum");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Categorical IR for disaster tweets"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  add_global_options(app, o);

  auto* pre = app.add_subcommand("preprocess", "tweets -> preprocessed JSONL");
  pre->add_option("--input", o.input, "tweets (JSONL or TSV)")->required();
  pre->add_option("--output", o.output, "preprocessed JSONL")->required();
  pre->add_option("--format", o.format, "jsonl or tsv (default: from extension)");

  auto* train = app.add_subcommand("train", "embeddings + classifier, prints the CV table");
  train->add_option("--input", o.input, "labeled preprocessed JSONL")->required();

  auto* rank = app.add_subcommand("rank", "classify, build buckets, write rankings");
  rank->add_option("--input", o.input, "preprocessed JSONL")->required();
  rank->add_option("--output-dir", o.output_dir)->required();

  auto* eval = app.add_subcommand("evaluate", "P@100, R@1000, AP and MAP against qrels");
  eval->add_option("--rankings-dir", o.rankings_dir)->required();
  eval->add_option("--format", o.format, "text or json")->capture_default_str();
  eval->add_option("--output", o.output, "report file (default: stdout)");

  auto* stats = app.add_subcommand("stats", "generalized-token counts per category");
  stats->add_option("--input", o.input, "labeled preprocessed JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    for (const auto& file : app.get_option("--config")->results()) {
      if (!file.empty() && !fs::is_regular_file(file)) {
        throw cir::UsageError("config file not found: " + file);
      }
    }
    auto& p = o.pipeline;
    p.rank.negative_keywords = o.negative_keywords;
    if (app.get_option("--lambda")->count() > 0) {
      p.rank.lambda_override = o.lambda;
    }
    if (!(p.rank.threshold > 0 && p.rank.threshold <= 1)) {
      throw cir::UsageError("--threshold-c must be in (0, 1]");
    }
    if (pre->parsed()) cmd_preprocess(o);
    else if (train->parsed()) cmd_train(o);
    else if (rank->parsed()) cmd_rank(o);
    else if (eval->parsed()) cmd_evaluate(o);
    else if (stats->parsed()) cmd_stats(o);
  } catch (const cir::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cir::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
