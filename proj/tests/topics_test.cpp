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

#include "cir/topics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "support/toy_corpora.hpp"

namespace cir {
namespace {

// Largest number of `planted` words found in any single topic's top 10.
int best_overlap(const TldaModel& m, const std::vector<std::string>& planted) {
  int best = 0;
  for (std::size_t t = 0; t < m.num_topics(); ++t) {
    const auto top = topic_top_words(m, t, 10);
    const std::set<std::string> s(top.begin(), top.end());
    int hits = 0;
    for (const auto& w : planted) hits += static_cast<int>(s.count(w));
    best = std::max(best, hits);
  }
  return best;
}

TldaHyper planted_hyper() {
  TldaHyper h;
  h.topics = 3;
  h.iterations = 200;
  return h;
}

TEST(TldaTest, DefaultsAndPriors) {
  const TldaHyper h;
  EXPECT_EQ(h.topics, 10);
  EXPECT_DOUBLE_EQ(h.effective_alpha(), 5.0);
  EXPECT_DOUBLE_EQ(h.beta, 0.01);
  EXPECT_DOUBLE_EQ(h.gamma, 20.0);
  EXPECT_EQ(h.iterations, 500);
}

TEST(TldaTest, PlantedTopicsRecoveredAndCountsConsistent) {
  int good = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto c = testing::planted_corpus(seed * 101, {100, 100, 100});
    TldaSampler sampler(c.docs, planted_hyper(), seed);
    ASSERT_EQ(recount(sampler.model()), sampler.model().counts);
    for (int i = 0; i < 200; ++i) {
      sampler.sweep();
      ASSERT_EQ(recount(sampler.model()), sampler.model().counts) << "sweep " << i;
    }
    for (const auto& planted : c.topics) {
      ++total;
      good += best_overlap(sampler.model(), planted) >= 8;
    }
  }
  EXPECT_GE(good, total * 8 / 10) << good << "/" << total;
}

TEST(TldaTest, OneTweetOneTopic) {
  const auto c = testing::planted_corpus(3, {20, 20, 20});
  const TldaModel m = train_tlda(c.docs, planted_hyper(), 3);
  ASSERT_EQ(m.doc_topic.size(), c.docs.size());
  std::int64_t docs = 0;
  for (const auto n : m.counts.topic_docs) docs += n;
  EXPECT_EQ(docs, static_cast<std::int64_t>(c.docs.size()));
  for (const int z : m.doc_topic) {
    EXPECT_GE(z, 0);
    EXPECT_LT(z, 3);
  }
}

TEST(TldaTest, SingleTopicDegenerates) {
  const auto c = testing::planted_corpus(5, {30, 30});
  TldaHyper h;
  h.topics = 1;
  h.iterations = 20;
  const TldaModel m = train_tlda(c.docs, h, 5);
  EXPECT_EQ(m.counts.topic_docs[0], static_cast<std::int64_t>(c.docs.size()));
  // Topic words plus background words give back the corpus unigram counts.
  std::map<std::string, std::int64_t> unigram;
  for (const auto& d : c.docs) {
    for (const auto& w : d) ++unigram[w];
  }
  for (std::size_t w = 0; w < m.vocab_size(); ++w) {
    EXPECT_EQ(m.counts.topic_word[w] + m.counts.background_word[w], unigram[m.vocab[w]]);
  }
}

TEST(TldaTest, SingleSweepAndErrors) {
  const auto c = testing::planted_corpus(6, {5, 5});
  TldaHyper h;
  h.iterations = 1;
  const TldaModel m = train_tlda(c.docs, h, 1);
  EXPECT_EQ(recount(m), m.counts);

  h.iterations = 0;
  EXPECT_THROW(train_tlda(c.docs, h, 1), UsageError);
  h.iterations = 1;
  h.topics = 0;
  EXPECT_THROW(train_tlda(c.docs, h, 1), UsageError);
  const std::vector<TokenList> empty_docs = {{}, {}};
  EXPECT_THROW(train_tlda(empty_docs, TldaHyper{}, 1), DataError);
  const std::vector<TokenList> none;
  EXPECT_THROW(train_tlda(none, TldaHyper{}, 1), DataError);
}

TEST(TldaTest, EmptyTweetsAreHarmless) {
  auto c = testing::planted_corpus(8, {10, 10});
  c.docs.insert(c.docs.begin() + 3, TokenList{});
  c.docs.push_back({});
  TldaHyper h;
  h.topics = 2;
  h.iterations = 10;
  const TldaModel m = train_tlda(c.docs, h, 2);
  EXPECT_EQ(recount(m), m.counts);
}

TEST(TldaTest, SeedDeterminism) {
  const auto c = testing::planted_corpus(9, {20, 20, 20});
  TldaHyper h = planted_hyper();
  h.iterations = 30;
  const TldaModel a = train_tlda(c.docs, h, 4);
  const TldaModel b = train_tlda(c.docs, h, 4);
  EXPECT_EQ(a.doc_topic, b.doc_topic);
  EXPECT_EQ(a.from_topic, b.from_topic);
  EXPECT_EQ(a.counts, b.counts);
  const TldaModel other = train_tlda(c.docs, h, 5);
  EXPECT_NE(other.from_topic, a.from_topic);
}

// Tweet order changes the chain, not the recovered structure: permuted
// corpora meet the same overlap criterion and have similar sorted topic sizes.
TEST(TldaTest, PermutationStableInDistribution) {
  int good = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto c = testing::planted_corpus(seed * 7, {100, 60, 40});
    const TldaModel base = train_tlda(c.docs, planted_hyper(), seed);
    Rng rng(seed);
    rng.shuffle(c.docs.begin(), c.docs.end());
    const TldaModel perm = train_tlda(c.docs, planted_hyper(), seed);
    for (const auto& planted : c.topics) {
      ++total;
      good += best_overlap(perm, planted) >= 8;
    }
    auto a = base.counts.topic_total, b = perm.counts.topic_total;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t t = 0; t < a.size(); ++t) {
      EXPECT_NEAR(static_cast<double>(a[t]), static_cast<double>(b[t]), 0.15 * a[t] + 10);
    }
  }
  EXPECT_GE(good, total * 8 / 10);
}

// Hand-built single-topic model.
TldaModel toy_model(std::vector<std::string> vocab, std::vector<std::int64_t> topic_counts) {
  TldaModel m;
  m.hyper.topics = 1;
  m.vocab = std::move(vocab);
  m.docs = {{}};
  m.doc_topic = {0};
  m.from_topic = {{}};
  m.counts.topic_docs = {1};
  m.counts.topic_word = topic_counts;
  std::int64_t total = 0;
  for (auto n : topic_counts) total += n;
  m.counts.topic_total = {total};
  m.counts.background_word.assign(m.vocab.size(), 0);
  return m;
}

TEST(TopKeywordsTest, LargestCountFirst) {
  const TldaModel m = toy_model({"food", "tent", "water"}, {3, 9, 5});
  const auto top = top_keywords(m, 20);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0], "tent");
  EXPECT_EQ(top[1], "water");
  EXPECT_EQ(top[2], "food");
}

TEST(TopKeywordsTest, TiesLexicographicAndExclusions) {
  const TldaModel m =
      toy_model({"HASH", "NUMBER", "ab", "rice", "tent", "zinc"}, {50, 50, 50, 4, 4, 4});
  const auto top = top_keywords(m, 20);
  EXPECT_EQ(top, (std::vector<std::string>{"rice", "tent", "zinc"}));
  EXPECT_EQ(top_keywords(m, 2), (std::vector<std::string>{"rice", "tent"}));
}

TEST(TopKeywordsTest, DominantPlantedTopicCovered) {
  const auto c = testing::planted_corpus(12, {200, 40, 40});
  const TldaModel m = train_tlda(c.docs, planted_hyper(), 12);
  const auto top = top_keywords(m, 20);
  EXPECT_EQ(top.size(), 20u);
  const std::set<std::string> s(top.begin(), top.end());
  EXPECT_EQ(s.size(), top.size());
  for (const auto& w : c.topics[0]) EXPECT_TRUE(s.count(w)) << w;
}

TEST(BucketTest, RoleMapping) {
  EXPECT_EQ(role_token(Category::kNeed, Role::kAlpha), "NUMBER");
  EXPECT_EQ(role_token(Category::kNeed, Role::kBeta), "QUESTION");
  EXPECT_EQ(role_token(Category::kNeed, Role::kGamma), "LINK");
  EXPECT_EQ(role_token(Category::kAvailability, Role::kAlpha), "MENTION");
  EXPECT_EQ(role_token(Category::kAvailability, Role::kBeta), "LINK");
  EXPECT_EQ(role_token(Category::kAvailability, Role::kGamma), "HASH");
  for (const Category c : kCategories) {
    const auto h5 = h5_bucket(c);
    ASSERT_EQ(h5.size(), 5u);
    int roles = 0;
    for (const auto& e : h5) {
      EXPECT_TRUE(is_generalized_token(e.token));
      roles += e.role != Role::kNone;
    }
    EXPECT_EQ(roles, 3);
  }
  const auto need = h5_bucket(Category::kNeed);
  EXPECT_EQ(need[0], (H5Entry{"QUESTION", Role::kBeta}));
  EXPECT_EQ(need[2], (H5Entry{"HASH", Role::kNone}));
}

struct Classified {
  std::vector<TokenList> docs;
  std::vector<Category> cats;
};

Classified classified_toy() {
  Classified c;
  Rng rng(4);
  const std::vector<std::string> need = {"need", "water", "food", "urgent", "help"};
  const std::vector<std::string> avail = {"donat", "volunt", "offer", "camp", "suppli"};
  for (int i = 0; i < 60; ++i) {
    const bool is_need = i % 3 == 0;
    TokenList d;
    for (int k = 0; k < 6; ++k) d.push_back((is_need ? need : avail)[rng.below(5)]);
    d.push_back(is_need ? "NUMBER" : "MENTION");
    c.docs.push_back(d);
    c.cats.push_back(is_need ? Category::kNeed : Category::kAvailability);
  }
  return c;
}

TEST(BucketTest, PartitionedByPredictedClass) {
  const Classified c = classified_toy();
  TldaHyper h;
  h.iterations = 30;
  const KeywordBuckets b = build_buckets(c.docs, c.cats, h, 1);
  std::set<std::string> need_words, avail_words;
  for (std::size_t i = 0; i < c.docs.size(); ++i) {
    (c.cats[i] == Category::kNeed ? need_words : avail_words).insert(c.docs[i].begin(),
                                                                     c.docs[i].end());
  }
  EXPECT_FALSE(b.k20_need.empty());
  for (const auto& w : b.k20_need) EXPECT_TRUE(need_words.count(w)) << w;
  for (const auto& w : b.k20_availability) EXPECT_TRUE(avail_words.count(w)) << w;
  for (const Category cat : kCategories) {
    EXPECT_LE(b.k20(cat).size(), 20u);
    for (const auto& w : b.k20(cat)) EXPECT_FALSE(is_generalized_token(w));
    // No hashtags anywhere, yet HASH stays in both H5 buckets.
    EXPECT_EQ(b.h5(cat), h5_bucket(cat));
  }
  EXPECT_EQ(build_buckets(c.docs, c.cats, h, 1, 2), b);
}

TEST(BucketTest, EmptyClassIsAnError) {
  Classified c = classified_toy();
  std::fill(c.cats.begin(), c.cats.end(), Category::kAvailability);
  EXPECT_THROW(build_buckets(c.docs, c.cats, TldaHyper{}, 1), DataError);
}

TEST(BucketJsonTest, RoundTrip) {
  KeywordBuckets b;
  b.k20_need = {"water", "food"};
  b.k20_availability = {"donat"};
  std::stringstream ss;
  write_buckets_json(ss, b);
  EXPECT_NE(ss.str().find("\"role\": \"alpha\""), std::string::npos);
  EXPECT_EQ(read_buckets_json(ss), b);
}

TEST(BucketJsonTest, Rejects) {
  const auto bad = [](const std::string& text) {
    std::istringstream in(text);
    return read_buckets_json(in);
  };
  EXPECT_THROW(bad("{"), DataError);
  EXPECT_THROW(bad(R"({"k20_need": []})"), DataError);
  EXPECT_THROW(bad(R"({"k20_need": ["HASH"], "k20_availability": []})"), DataError);
  EXPECT_THROW(bad(R"({"k20_need": ["a", "a"], "k20_availability": []})"), DataError);
  EXPECT_THROW(
      bad(R"({"k20_need": [], "k20_availability": [], "h5": {"need": [{"token": "HASH", "role": "alpha"}]}})"),
      DataError);
  EXPECT_NO_THROW(bad(R"({"k20_need": [], "k20_availability": []})"));
}

}  // namespace
}  // namespace cir
