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

// Stage orchestration shared by the command-line tool and the end-to-end
// tests. Every stage reads and writes plain files, so each can be rerun from
// persisted intermediates.

#ifndef CIR_PIPELINE_HPP_
#define CIR_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cir/classifier.hpp"
#include "cir/embedding.hpp"
#include "cir/ranking.hpp"
#include "cir/topics.hpp"

namespace cir {

struct PreprocessedTweet;

struct PipelineConfig {
  std::uint64_t seed = 42;
  int threads = 1;  // 1 is the deterministic mode
  EmbeddingHyper embedding;
  MlpHyper mlp;
  int cv_folds = 10;
  TldaHyper tlda;
  RankConfig rank;
};

struct TrainedModel {
  EmbeddingModel embedding;
  MlpModel mlp;

  friend bool operator==(const TrainedModel&, const TrainedModel&) = default;
};

struct TrainResult {
  TrainedModel model;
  CvReport cv;
};

/// Embeddings on all tweets, k-fold CV of the MLP on trained document
/// vectors plus stats, then the final MLP on everything. Throws DataError on
/// unlabeled tweets, a single class or an empty vocabulary.
TrainResult train_pipeline(std::span<const PreprocessedTweet> labeled,
                           const PipelineConfig& config);

struct RankOutput {
  std::vector<ClassifiedTweet> classified;
  KeywordBuckets buckets;
  std::vector<RankedEntry> need;
  std::vector<RankedEntry> availability;

  const std::vector<RankedEntry>& operator[](Category c) const {
    return c == Category::kNeed ? need : availability;
  }
};

/// Inferred vectors, classification, one topic model per predicted class,
/// then both rankings. Throws DataError when a predicted class is empty.
RankOutput rank_pipeline(std::span<const PreprocessedTweet> tweets, const TrainedModel& model,
                         const PipelineConfig& config);

/// Each keyword plus its lowercased stem, deduplicated.
std::vector<std::string> expand_negative_keywords(std::span<const std::string> keywords);

void save_model(const std::filesystem::path& path, const TrainedModel& model);
/// Throws DataError when the file is missing or a section is absent.
TrainedModel load_model(const std::filesystem::path& path);

/// Per-fold rows plus the mean row.
void write_cv_table(std::ostream& out, const CvReport& report);

}  // namespace cir

#endif  // CIR_PIPELINE_HPP_
