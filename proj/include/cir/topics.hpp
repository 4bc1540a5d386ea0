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

// Twitter-LDA: every tweet carries a single topic and every word a switch
// deciding whether it was drawn from that topic or from a shared background
// distribution. Collapsed Gibbs sampling over both.

#ifndef CIR_TOPICS_HPP_
#define CIR_TOPICS_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cir/common.hpp"
#include "cir/embedding.hpp"
#include "cir/random.hpp"

namespace cir {

struct TldaHyper {
  int topics = 10;
  double alpha = 0;  // <= 0 means 50 / topics
  double beta = 0.01;
  double gamma = 20;  // symmetric Beta prior on the background switch
  int iterations = 500;

  double effective_alpha() const { return alpha > 0 ? alpha : 50.0 / topics; }
};

struct TldaCounts {
  std::vector<std::int64_t> topic_docs;   // T
  std::vector<std::int64_t> topic_word;   // T x V
  std::vector<std::int64_t> topic_total;  // T
  std::vector<std::int64_t> background_word;  // V
  std::int64_t background_total = 0;
  std::int64_t topic_switch_total = 0;  // words assigned to topics

  friend bool operator==(const TldaCounts&, const TldaCounts&) = default;
};

struct TldaModel {
  TldaHyper hyper;
  std::uint64_t seed = 0;
  std::vector<std::string> vocab;        // sorted
  std::vector<std::vector<int>> docs;    // word ids per tweet
  std::vector<int> doc_topic;            // one topic per tweet
  std::vector<std::vector<std::uint8_t>> from_topic;  // 1 = topic word, 0 = background
  TldaCounts counts;

  std::size_t num_topics() const { return counts.topic_total.size(); }
  std::size_t vocab_size() const { return vocab.size(); }
  int word_id(const std::string& w) const;  // -1 if absent
};

/// Count tables rebuilt from the raw assignments.
TldaCounts recount(const TldaModel& model);

/// Incremental sampler: construction draws the random initial state, each
/// sweep() resamples every tweet's topic and then its words' switches.
class TldaSampler {
 public:
  /// Throws UsageError for topics < 1, DataError for an empty vocabulary.
  TldaSampler(std::span<const TokenList> docs, const TldaHyper& hyper, std::uint64_t seed);

  void sweep();
  const TldaModel& model() const { return model_; }
  TldaModel take() && { return std::move(model_); }

 private:
  void sample_topic(std::size_t d);
  void sample_switches(std::size_t d);

  TldaModel model_;
  Rng rng_;
  std::vector<double> weights_;
};

/// Runs hyper.iterations sweeps (at least 1).
TldaModel train_tlda(std::span<const TokenList> docs, const TldaHyper& hyper, std::uint64_t seed);

/// P(word | topic) with beta smoothing.
double topic_word_probability(const TldaModel& model, std::size_t topic, std::size_t word);
/// P(topic) from the tweet-topic counts with alpha smoothing.
double topic_probability(const TldaModel& model, std::size_t topic);

/// Words ranked by sum_t P(w|t) P(t); generalized tokens and words shorter
/// than 3 characters are skipped; ties in lexicographic order.
std::vector<std::string> top_keywords(const TldaModel& model, std::size_t n = 20);

/// Most frequent topic words of one topic, ties lexicographic.
std::vector<std::string> topic_top_words(const TldaModel& model, std::size_t topic,
                                         std::size_t n);

enum class Role : std::uint8_t { kAlpha, kBeta, kGamma, kNone };

std::string_view to_string(Role r);

struct H5Entry {
  std::string token;
  Role role = Role::kNone;

  friend bool operator==(const H5Entry&, const H5Entry&) = default;
};

/// All five generalized tokens, with the α/β/γ roles of the category:
/// Need NUMBER/QUESTION/LINK, Availability MENTION/LINK/HASH.
std::vector<H5Entry> h5_bucket(Category c);

/// The generalized token holding `role` for `c`.
std::string_view role_token(Category c, Role role);

struct KeywordBuckets {
  std::vector<std::string> k20_need;
  std::vector<std::string> k20_availability;
  std::vector<H5Entry> h5_need = h5_bucket(Category::kNeed);
  std::vector<H5Entry> h5_availability = h5_bucket(Category::kAvailability);

  const std::vector<std::string>& k20(Category c) const {
    return c == Category::kNeed ? k20_need : k20_availability;
  }
  const std::vector<H5Entry>& h5(Category c) const {
    return c == Category::kNeed ? h5_need : h5_availability;
  }

  friend bool operator==(const KeywordBuckets&, const KeywordBuckets&) = default;
};

/// One Twitter-LDA model per predicted category. `categories[i]` is the
/// predicted class of `docs[i]`. Throws DataError when a category is empty.
/// The two chains run concurrently when threads != 1; results are identical.
KeywordBuckets build_buckets(std::span<const TokenList> docs, std::span<const Category> categories,
                             const TldaHyper& hyper, std::uint64_t seed, int threads = 1);

void write_buckets_json(std::ostream& out, const KeywordBuckets& buckets);
/// Reads the k20 lists; the H5 part is fixed and is validated if present.
KeywordBuckets read_buckets_json(std::istream& in);

}  // namespace cir

#endif  // CIR_TOPICS_HPP_
