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

// w-Ranking Key: per-category rank scores from classifier probabilities,
// keyword-bucket matches and generalized-token role counts.

#ifndef CIR_RANKING_HPP_
#define CIR_RANKING_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cir/classifier.hpp"
#include "cir/common.hpp"
#include "cir/embedding.hpp"
#include "cir/topics.hpp"

namespace cir {

struct PreprocessedTweet;

struct ClassifiedTweet {
  std::string id;
  TokenList tokens;
  StatCounts stats;
  bool has_float = false;
  Category category = Category::kAvailability;
  ClassScores scores;
};

/// Category is the argmax of `scores` (ties to Availability).
ClassifiedTweet classify(const PreprocessedTweet& tweet, const ClassScores& scores);

struct RankedEntry {
  std::string id;
  double rank_score = 0;
  Category category = Category::kNeed;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

struct RankConfig {
  double threshold = 0.8;  // similarity must be strictly greater
  std::vector<std::string> negative_keywords = {"quake"};
  std::optional<double> lambda_override;
};

/// Byte-level edit distance (unit-cost insert, delete, substitute).
std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - levenshtein / max length; 1 for two empty strings.
double similarity(std::string_view a, std::string_view b);

/// Highest probability for `c` among tweets predicted as `c`. Throws
/// DataError when there are none.
double lambda_pool(std::span<const ClassifiedTweet> classified, Category c);

struct AlphaCounts {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::int64_t gamma = 0;

  std::int64_t sum() const { return alpha + beta + gamma; }
  friend bool operator==(const AlphaCounts&, const AlphaCounts&) = default;
};

AlphaCounts alpha_counts(const ClassifiedTweet& tweet, Category c);

/// Bucket words (K20 and H5 of `c`) whose best similarity to a tweet token
/// exceeds the threshold.
int bucket_matches(const TokenList& tokens, const KeywordBuckets& buckets, Category c,
                   double threshold);

/// has_float, or a token similar to a negative keyword.
bool negative_condition(const ClassifiedTweet& tweet, const RankConfig& config);

/// (a1 + a2 + a3) * (+/-) p * lambda^m for the tweet's own category.
double rank_score(const ClassifiedTweet& tweet, const KeywordBuckets& buckets, double lambda,
                  const RankConfig& config);

std::vector<double> score_batch_serial(std::span<const ClassifiedTweet> tweets,
                                       const KeywordBuckets& buckets, double lambda,
                                       const RankConfig& config);
std::vector<double> score_batch(std::span<const ClassifiedTweet> tweets,
                                const KeywordBuckets& buckets, double lambda,
                                const RankConfig& config, int threads = 0);

/// Tweets predicted as `c`, sorted by rank score descending, then category
/// probability descending, then id ascending. Throws DataError when none.
std::vector<RankedEntry> rank_category(std::span<const ClassifiedTweet> classified,
                                       const KeywordBuckets& buckets, Category c,
                                       const RankConfig& config, int threads = 1);

/// rank<TAB>id<TAB>category<TAB>rank_score, rank starting at 1.
void write_ranking_tsv(std::ostream& out, std::span<const RankedEntry> entries);
std::vector<RankedEntry> parse_ranking_tsv(std::istream& in, std::string_view source = "<stream>");
std::vector<RankedEntry> load_ranking(const std::filesystem::path& path);

}  // namespace cir

#endif  // CIR_RANKING_HPP_
