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

#include "cir/corpus.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "cir/preprocess.hpp"

namespace cir {
namespace {

std::vector<RawTweet> parse(const std::string& text, TweetFormat f = TweetFormat::kJsonl) {
  std::istringstream in(text);
  return parse_tweets(in, f);
}

TEST(LoadTweetsTest, JsonlFieldMapping) {
  const auto tweets = parse(R"({"id":"t1","text":"Need water?","label":"need"})" "\n");
  ASSERT_EQ(tweets.size(), 1u);
  EXPECT_EQ(tweets[0], (RawTweet{"t1", "Need water?", Category::kNeed}));
}

TEST(LoadTweetsTest, EmptyInput) { EXPECT_TRUE(parse("").empty()); }

TEST(LoadTweetsTest, DuplicateIdNamesTheId) {
  try {
    parse(R"({"id":"t1","text":"a"})" "\n" R"({"id":"t1","text":"b"})" "\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("\"t1\""), std::string::npos);
  }
}

TEST(LoadTweetsTest, MalformedLineReportsLineNumber) {
  try {
    parse(R"({"id":"a","text":"x"})" "\n" "{not json\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
}

TEST(LoadTweetsTest, UnknownLabelRejected) {
  EXPECT_THROW(parse(R"({"id":"a","text":"x","label":"sympathy"})" "\n"), DataError);
}

TEST(LoadTweetsTest, LabelsAreCaseInsensitive) {
  const auto tweets = parse("a\tAVAILABILITY\tfood here\nb\t-\tno label\tstill text\n",
                            TweetFormat::kTsv);
  ASSERT_EQ(tweets.size(), 2u);
  EXPECT_EQ(tweets[0].label, Category::kAvailability);
  EXPECT_FALSE(tweets[1].label.has_value());
  EXPECT_EQ(tweets[1].text, "no label\tstill text");
}

TEST(LoadTweetsTest, TextStoredVerbatim) {
  const auto tweets = parse(R"({"id":"a","text":"  पानी é ?? "})" "\n");
  EXPECT_EQ(tweets[0].text, "  पानी é ?? ");
}

TEST(LoadTweetsTest, MissingFileIsDataError) {
  EXPECT_THROW(load_tweets("/nonexistent/tweets.jsonl", TweetFormat::kJsonl), DataError);
}

TEST(LoadTweetsTest, JsonlRoundTrip) {
  std::mt19937 rng(7);
  const std::vector<std::string> pieces = {"a", "b", " ", "c", "?", "#", "@", "1",
                                           ".", "\t", "\"", "\\", "é", "पा"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RawTweet> tweets;
    for (int i = 0; i < 20; ++i) {
      RawTweet t;
      t.id = "id" + std::to_string(i);
      const int len = static_cast<int>(rng() % 12);
      for (int k = 0; k < len; ++k) t.text += pieces[rng() % pieces.size()];
      if (rng() % 3 == 0) t.label = Category::kNeed;
      else if (rng() % 2 == 0) t.label = Category::kAvailability;
      tweets.push_back(t);
    }
    std::ostringstream out;
    write_tweets_jsonl(out, tweets);
    EXPECT_EQ(parse(out.str()), tweets);
  }
}

TEST(LoadQrelsTest, DirectMapping) {
  std::istringstream in("# comment\nt1\tNeed\t1\nt1\tAvailability\t0\n");
  const QrelSet q = parse_qrels(in);
  EXPECT_EQ(q.size(), 2u);
  EXPECT_EQ(q.grade("t1", Category::kNeed), 1);
  EXPECT_EQ(q.grade("t1", Category::kAvailability), 0);
  EXPECT_TRUE(q.is_relevant("t1", Category::kNeed));
  EXPECT_FALSE(q.is_relevant("t1", Category::kAvailability));
  EXPECT_EQ(q.relevant_count(Category::kNeed), 1u);
  EXPECT_EQ(q.relevant_count(Category::kAvailability), 0u);
}

TEST(LoadQrelsTest, ConflictingDuplicateRejected) {
  std::istringstream in("t1\tNeed\t1\nt1\tNeed\t2\n");
  EXPECT_THROW(parse_qrels(in), DataError);
}

TEST(LoadQrelsTest, IdenticalDuplicateAccepted) {
  std::istringstream in("t1\tNeed\t1\nt1\tNeed\t1\n");
  EXPECT_EQ(parse_qrels(in).size(), 1u);
}

TEST(LoadQrelsTest, MalformedRows) {
  for (const char* bad : {"t1\tNeed\n", "t1\tNeed\t-1\n", "t1\tNeed\tx\n", "t1\tOther\t1\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(parse_qrels(in), DataError) << bad;
  }
}

PreprocessedTweet labeled(std::string id, Category c, StatCounts s) {
  PreprocessedTweet t;
  t.id = std::move(id);
  t.label = c;
  t.stats = s;
  return t;
}

TEST(CorpusStatsTest, ComponentwiseSum) {
  const std::vector<PreprocessedTweet> tweets = {
      labeled("a", Category::kNeed, {1, 0, 0, 0, 1}),
      labeled("b", Category::kNeed, {0, 1, 0, 0, 0}),
  };
  const CorpusStats s = corpus_stats(tweets);
  EXPECT_EQ(s.need, (StatCounts{1, 1, 0, 0, 1}));
  EXPECT_EQ(s.availability, StatCounts{});
}

TEST(CorpusStatsTest, EmptyCorpusIsZero) {
  EXPECT_EQ(corpus_stats({}), CorpusStats{});
}

TEST(CorpusStatsTest, UnlabeledRejected) {
  std::vector<PreprocessedTweet> tweets(1);
  tweets[0].id = "x";
  EXPECT_THROW(corpus_stats(tweets), DataError);
}

TEST(CorpusStatsTest, PermutationInvariantAndAdditive) {
  std::mt19937 rng(11);
  std::vector<PreprocessedTweet> a, b;
  for (int i = 0; i < 40; ++i) {
    const auto draw = [&] { return static_cast<std::int64_t>(rng() % 3); };
    StatCounts s{draw(), draw(), draw(), draw(), draw()};
    auto t = labeled("t" + std::to_string(i), rng() % 2 ? Category::kNeed : Category::kAvailability, s);
    (i % 2 ? a : b).push_back(t);
  }
  std::vector<PreprocessedTweet> both = a;
  both.insert(both.end(), b.begin(), b.end());
  CorpusStats sum = corpus_stats(a);
  sum.need += corpus_stats(b).need;
  sum.availability += corpus_stats(b).availability;
  EXPECT_EQ(corpus_stats(both), sum);
  std::shuffle(both.begin(), both.end(), rng);
  EXPECT_EQ(corpus_stats(both), sum);
}

TEST(PreprocessedJsonlTest, RoundTrip) {
  PreprocessedTweet t = labeled("a", Category::kAvailability, {0, 1, 2, 3, 4});
  t.tokens = {"food", "NUMBER", "kathmandu"};
  t.has_float = true;
  PreprocessedTweet u;
  u.id = "b";
  std::vector<PreprocessedTweet> in = {t, u};
  std::ostringstream out;
  write_preprocessed_jsonl(out, in);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_preprocessed_jsonl(back), in);
}

TEST(CorpusStatsTableTest, HasOneRowPerCategory) {
  CorpusStats s;
  s.availability = {3, 304, 950, 1131, 1759};
  s.need = {4, 77, 249, 338, 404};
  std::ostringstream out;
  write_corpus_stats_table(out, s);
  const std::string text = out.str();
  EXPECT_NE(text.find("Availability"), std::string::npos);
  EXPECT_NE(text.find("1759"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

}  // namespace
}  // namespace cir
