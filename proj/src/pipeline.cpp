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

#include "cir/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ostream>
#include <string>

#include "cir/preprocess.hpp"
#include "cir/random.hpp"

namespace cir {
namespace {

// Stage streams off the global seed.
constexpr std::uint64_t kEmbeddingStream = 0xE1;
constexpr std::uint64_t kCvStream = 0xC7;
constexpr std::uint64_t kMlpStream = 0x31;
constexpr std::uint64_t kInferStream = 0x1F;
constexpr std::uint64_t kTopicStream = 0x70;

std::vector<TokenList> token_lists(std::span<const PreprocessedTweet> tweets) {
  std::vector<TokenList> docs;
  docs.reserve(tweets.size());
  for (const auto& t : tweets) docs.push_back(t.tokens);
  return docs;
}

std::vector<FeatureVector> features(const Matrix& vectors,
                                    std::span<const PreprocessedTweet> tweets) {
  std::vector<FeatureVector> x;
  x.reserve(tweets.size());
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    x.push_back(compose_feature(vectors.row(i), tweets[i].stats));
  }
  return x;
}

}  // namespace

TrainResult train_pipeline(std::span<const PreprocessedTweet> labeled,
                           const PipelineConfig& config) {
  std::vector<Category> y;
  y.reserve(labeled.size());
  for (const auto& t : labeled) {
    if (!t.label) throw DataError("training tweet without a label: " + t.id);
    y.push_back(*t.label);
  }
  const bool both = std::find(y.begin(), y.end(), Category::kNeed) != y.end() &&
                    std::find(y.begin(), y.end(), Category::kAvailability) != y.end();
  if (!both) throw DataError("training corpus must contain both Need and Availability tweets");

  const auto docs = token_lists(labeled);
  const Vocabulary vocab = build_vocab(std::span<const TokenList>(docs), config.embedding.min_count);

  TrainResult result;
  result.model.embedding =
      train_embeddings(docs, vocab, config.embedding,
                       derive_seed(config.seed, kEmbeddingStream), config.threads);
  const auto x = features(result.model.embedding.docs, labeled);
  try {
    result.cv = kfold_cv(x, y, config.cv_folds, config.mlp, derive_seed(config.seed, kCvStream),
                         config.threads);
  } catch (const UsageError& e) {
    if (config.cv_folds >= 2) throw DataError(e.what());
    throw;
  }
  result.model.mlp = train_mlp(x, y, config.mlp, derive_seed(config.seed, kMlpStream));
  return result;
}

std::vector<std::string> expand_negative_keywords(std::span<const std::string> keywords) {
  std::vector<std::string> out;
  const auto push = [&](std::string w) {
    if (!w.empty() && std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  };
  for (const auto& k : keywords) {
    std::string lower = k;
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    push(k);
    push(porter_stem(lower));
  }
  return out;
}

RankOutput rank_pipeline(std::span<const PreprocessedTweet> tweets, const TrainedModel& model,
                         const PipelineConfig& config) {
  if (tweets.empty()) throw DataError("no tweets to rank");
  const auto docs = token_lists(tweets);
  const Matrix vectors =
      infer_batch(model.embedding, docs, model.embedding.hyper.infer_steps,
                  derive_seed(config.seed, kInferStream), config.threads);
  const auto x = features(vectors, tweets);
  const auto scores = predict_batch(model.mlp, x, config.threads);

  RankOutput out;
  out.classified.reserve(tweets.size());
  std::vector<Category> predicted;
  predicted.reserve(tweets.size());
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    out.classified.push_back(classify(tweets[i], scores[i]));
    predicted.push_back(out.classified.back().category);
  }
  out.buckets = build_buckets(docs, predicted, config.tlda,
                              derive_seed(config.seed, kTopicStream), config.threads);

  RankConfig rank = config.rank;
  rank.negative_keywords = expand_negative_keywords(config.rank.negative_keywords);
  out.need = rank_category(out.classified, out.buckets, Category::kNeed, rank, config.threads);
  out.availability =
      rank_category(out.classified, out.buckets, Category::kAvailability, rank, config.threads);
  return out;
}

void save_model(const std::filesystem::path& path, const TrainedModel& model) {
  ModelSections sections;
  sections[kEmbeddingSection] = serialize(model.embedding);
  sections[kClassifierSection] = serialize(model.mlp);
  write_model_file(path, sections);
}

TrainedModel load_model(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw DataError("model file not found: " + path.string());
  const ModelSections sections = read_model_file(path);
  const auto section = [&](const SectionTag& tag) -> const std::vector<std::uint8_t>& {
    const auto it = sections.find(tag);
    if (it == sections.end()) {
      throw DataError(path.string() + ": missing section " + std::string(tag.begin(), tag.end()));
    }
    return it->second;
  };
  TrainedModel model;
  model.embedding = deserialize_embedding(section(kEmbeddingSection));
  model.mlp = deserialize_mlp(section(kClassifierSection));
  return model;
}

void write_cv_table(std::ostream& out, const CvReport& report) {
  char line[160];
  out << "fold  n     accuracy  baseline  need_P  need_R  need_F1  avail_P  avail_R  avail_F1\n";
  const auto row = [&](const std::string& label, const FoldMetrics& m) {
    std::snprintf(line, sizeof line,
                  "%-5s %-5zu %-9.4f %-9.4f %-7.4f %-7.4f %-8.4f %-8.4f %-8.4f %.4f\n",
                  label.c_str(), m.test_size, m.accuracy, m.baseline_accuracy, m.need.precision,
                  m.need.recall, m.need.f1, m.availability.precision, m.availability.recall,
                  m.availability.f1);
    out << line;
  };
  for (std::size_t f = 0; f < report.folds.size(); ++f) row(std::to_string(f + 1), report.folds[f]);
  row("mean", report.mean);
}

}  // namespace cir
