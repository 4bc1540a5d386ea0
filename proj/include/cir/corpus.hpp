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

// Tweet, relevance-judgment and corpus-statistics data model, plus the file
// formats they are read from and written to.

#ifndef CIR_CORPUS_HPP_
#define CIR_CORPUS_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cir/common.hpp"

namespace cir {

struct PreprocessedTweet;

struct RawTweet {
  std::string id;
  std::string text;
  std::optional<Category> label;

  friend bool operator==(const RawTweet&, const RawTweet&) = default;
};

enum class TweetFormat { kJsonl, kTsv };

/// Parses "jsonl" or "tsv"; throws UsageError otherwise.
TweetFormat parse_tweet_format(std::string_view s);

/// Loads tweets in file order. JSONL: {"id", "text", optional "label"} per
/// line. TSV: id<TAB>label-or-"-"<TAB>text. Blank lines are skipped.
/// Throws DataError on I/O failure, malformed lines (with line number),
/// duplicate ids and unknown labels.
std::vector<RawTweet> load_tweets(const std::filesystem::path& path,
                                  TweetFormat format);
std::vector<RawTweet> parse_tweets(std::istream& in, TweetFormat format,
                                   std::string_view source = "<stream>");

void write_tweets_jsonl(std::ostream& out, std::span<const RawTweet> tweets);

/// Gold relevance judgments keyed by (tweet id, category).
class QrelSet {
 public:
  /// Inserts a judgment. Throws DataError when the same key already holds a
  /// different grade; identical duplicates are accepted.
  void add(const std::string& id, Category category, int grade);

  /// Grade of the pair, or nullopt when unjudged.
  std::optional<int> grade(const std::string& id, Category category) const;
  bool is_relevant(const std::string& id, Category category) const;

  /// Number of ids with grade > 0 for the category.
  std::size_t relevant_count(Category category) const;
  std::size_t size() const { return judgments_.size(); }

  const std::map<std::pair<std::string, Category>, int>& judgments() const {
    return judgments_;
  }

 private:
  std::map<std::pair<std::string, Category>, int> judgments_;
};

/// Reads id<TAB>category<TAB>grade rows; '#' lines and blank lines ignored.
QrelSet load_qrels(const std::filesystem::path& path);
QrelSet parse_qrels(std::istream& in, std::string_view source = "<stream>");

/// Cumulative generalized-token counts per category.
struct CorpusStats {
  StatCounts need;
  StatCounts availability;

  const StatCounts& operator[](Category c) const {
    return c == Category::kNeed ? need : availability;
  }
  StatCounts& operator[](Category c) {
    return c == Category::kNeed ? need : availability;
  }
  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

/// Per-category componentwise sum. Throws DataError on an unlabeled tweet.
CorpusStats corpus_stats(std::span<const PreprocessedTweet> tweets);

/// Renders the per-category table (one row per category, one column per
/// generalized token).
void write_corpus_stats_table(std::ostream& out, const CorpusStats& stats);

// Preprocessed corpus persistence (JSONL, one PreprocessedTweet per line).
void write_preprocessed_jsonl(std::ostream& out,
                              std::span<const PreprocessedTweet> tweets);
std::vector<PreprocessedTweet> parse_preprocessed_jsonl(
    std::istream& in, std::string_view source = "<stream>");
std::vector<PreprocessedTweet> load_preprocessed(
    const std::filesystem::path& path);

}  // namespace cir

#endif  // CIR_CORPUS_HPP_
