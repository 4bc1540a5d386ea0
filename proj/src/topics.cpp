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
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "omp_util.hpp"

namespace cir {
namespace {

constexpr std::uint64_t kChainStream = 0x7DA;

std::size_t category_index(Category c) { return static_cast<std::size_t>(c); }

}  // namespace

int TldaModel::word_id(const std::string& w) const {
  const auto it = std::lower_bound(vocab.begin(), vocab.end(), w);
  return it != vocab.end() && *it == w ? static_cast<int>(it - vocab.begin()) : -1;
}

TldaCounts recount(const TldaModel& m) {
  const auto t = static_cast<std::size_t>(m.hyper.topics);
  const std::size_t v = m.vocab_size();
  TldaCounts c;
  c.topic_docs.assign(t, 0);
  c.topic_word.assign(t * v, 0);
  c.topic_total.assign(t, 0);
  c.background_word.assign(v, 0);
  for (std::size_t d = 0; d < m.docs.size(); ++d) {
    const auto z = static_cast<std::size_t>(m.doc_topic[d]);
    ++c.topic_docs[z];
    for (std::size_t n = 0; n < m.docs[d].size(); ++n) {
      const auto w = static_cast<std::size_t>(m.docs[d][n]);
      if (m.from_topic[d][n]) {
        ++c.topic_word[z * v + w];
        ++c.topic_total[z];
        ++c.topic_switch_total;
      } else {
        ++c.background_word[w];
        ++c.background_total;
      }
    }
  }
  return c;
}

TldaSampler::TldaSampler(std::span<const TokenList> docs, const TldaHyper& hyper,
                         std::uint64_t seed)
    : rng_(seed) {
  if (hyper.topics < 1) throw UsageError("number of topics must be >= 1");
  if (!(hyper.beta > 0) || !(hyper.gamma > 0) || !(hyper.effective_alpha() > 0)) {
    throw UsageError("Twitter-LDA priors must be positive");
  }
  TldaModel& m = model_;
  m.hyper = hyper;
  m.seed = seed;
  for (const TokenList& d : docs) m.vocab.insert(m.vocab.end(), d.begin(), d.end());
  std::sort(m.vocab.begin(), m.vocab.end());
  m.vocab.erase(std::unique(m.vocab.begin(), m.vocab.end()), m.vocab.end());
  if (m.vocab.empty()) throw DataError("Twitter-LDA: empty vocabulary");

  const auto topics = static_cast<std::uint64_t>(hyper.topics);
  m.docs.resize(docs.size());
  m.doc_topic.resize(docs.size());
  m.from_topic.resize(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const std::string& w : docs[d]) m.docs[d].push_back(m.word_id(w));
    m.doc_topic[d] = static_cast<int>(rng_.below(topics));
    for (std::size_t n = 0; n < m.docs[d].size(); ++n) {
      m.from_topic[d].push_back(static_cast<std::uint8_t>(rng_.below(2)));
    }
  }
  m.counts = recount(m);
  weights_.resize(static_cast<std::size_t>(hyper.topics));
}

void TldaSampler::sample_topic(std::size_t d) {
  TldaModel& m = model_;
  TldaCounts& c = m.counts;
  const std::size_t v = m.vocab_size();
  const auto& words = m.docs[d];
  const auto& flags = m.from_topic[d];
  const auto old = static_cast<std::size_t>(m.doc_topic[d]);

  --c.topic_docs[old];
  for (std::size_t n = 0; n < words.size(); ++n) {
    if (!flags[n]) continue;
    --c.topic_word[old * v + static_cast<std::size_t>(words[n])];
    --c.topic_total[old];
  }

  const double alpha = m.hyper.effective_alpha();
  const double beta = m.hyper.beta;
  const double vbeta = beta * static_cast<double>(v);
  double top = -INFINITY;
  for (std::size_t t = 0; t < weights_.size(); ++t) {
    double lp = std::log(static_cast<double>(c.topic_docs[t]) + alpha);
    std::int64_t seen_total = 0;
    for (std::size_t n = 0; n < words.size(); ++n) {
      if (!flags[n]) continue;
      // Earlier copies of the same word in this tweet.
      std::int64_t seen = 0;
      for (std::size_t p = 0; p < n; ++p) seen += flags[p] && words[p] == words[n];
      const auto w = static_cast<std::size_t>(words[n]);
      lp += std::log(static_cast<double>(c.topic_word[t * v + w] + seen) + beta);
      lp -= std::log(static_cast<double>(c.topic_total[t] + seen_total) + vbeta);
      ++seen_total;
    }
    weights_[t] = lp;
    top = std::max(top, lp);
  }
  double z = 0;
  for (double& w : weights_) {
    w = std::exp(w - top);
    z += w;
  }
  double u = rng_.uniform() * z;
  std::size_t pick = weights_.size() - 1;
  for (std::size_t t = 0; t < weights_.size(); ++t) {
    if (u < weights_[t]) {
      pick = t;
      break;
    }
    u -= weights_[t];
  }

  m.doc_topic[d] = static_cast<int>(pick);
  ++c.topic_docs[pick];
  for (std::size_t n = 0; n < words.size(); ++n) {
    if (!flags[n]) continue;
    ++c.topic_word[pick * v + static_cast<std::size_t>(words[n])];
    ++c.topic_total[pick];
  }
}

void TldaSampler::sample_switches(std::size_t d) {
  TldaModel& m = model_;
  TldaCounts& c = m.counts;
  const std::size_t v = m.vocab_size();
  const double beta = m.hyper.beta;
  const double vbeta = beta * static_cast<double>(v);
  const double gamma = m.hyper.gamma;
  const auto z = static_cast<std::size_t>(m.doc_topic[d]);
  for (std::size_t n = 0; n < m.docs[d].size(); ++n) {
    const auto w = static_cast<std::size_t>(m.docs[d][n]);
    std::uint8_t& flag = m.from_topic[d][n];
    if (flag) {
      --c.topic_word[z * v + w];
      --c.topic_total[z];
      --c.topic_switch_total;
    } else {
      --c.background_word[w];
      --c.background_total;
    }
    const double p_bg = (static_cast<double>(c.background_total) + gamma) *
                        (static_cast<double>(c.background_word[w]) + beta) /
                        (static_cast<double>(c.background_total) + vbeta);
    const double p_topic = (static_cast<double>(c.topic_switch_total) + gamma) *
                           (static_cast<double>(c.topic_word[z * v + w]) + beta) /
                           (static_cast<double>(c.topic_total[z]) + vbeta);
    flag = rng_.uniform() * (p_bg + p_topic) >= p_bg ? 1 : 0;
    if (flag) {
      ++c.topic_word[z * v + w];
      ++c.topic_total[z];
      ++c.topic_switch_total;
    } else {
      ++c.background_word[w];
      ++c.background_total;
    }
  }
}

void TldaSampler::sweep() {
  for (std::size_t d = 0; d < model_.docs.size(); ++d) {
    sample_topic(d);
    sample_switches(d);
  }
}

TldaModel train_tlda(std::span<const TokenList> docs, const TldaHyper& hyper, std::uint64_t seed) {
  if (hyper.iterations < 1) throw UsageError("Twitter-LDA needs at least one sweep");
  TldaSampler sampler(docs, hyper, seed);
  for (int i = 0; i < hyper.iterations; ++i) sampler.sweep();
  return std::move(sampler).take();
}

double topic_word_probability(const TldaModel& m, std::size_t topic, std::size_t word) {
  const double beta = m.hyper.beta;
  const std::size_t v = m.vocab_size();
  return (static_cast<double>(m.counts.topic_word[topic * v + word]) + beta) /
         (static_cast<double>(m.counts.topic_total[topic]) + beta * static_cast<double>(v));
}

double topic_probability(const TldaModel& m, std::size_t topic) {
  const double alpha = m.hyper.effective_alpha();
  return (static_cast<double>(m.counts.topic_docs[topic]) + alpha) /
         (static_cast<double>(m.docs.size()) + alpha * static_cast<double>(m.num_topics()));
}

std::vector<std::string> top_keywords(const TldaModel& m, std::size_t n) {
  std::vector<double> prior(m.num_topics());
  for (std::size_t t = 0; t < prior.size(); ++t) prior[t] = topic_probability(m, t);
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t w = 0; w < m.vocab_size(); ++w) {
    const std::string& word = m.vocab[w];
    if (word.size() < 3 || is_generalized_token(word)) continue;
    double s = 0;
    for (std::size_t t = 0; t < prior.size(); ++t) s += topic_word_probability(m, t, w) * prior[t];
    scored.emplace_back(s, w);
  }
  // Vocabulary ids are in lexicographic order, so the id breaks ties.
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(n, scored.size()); ++i) out.push_back(m.vocab[scored[i].second]);
  return out;
}

std::vector<std::string> topic_top_words(const TldaModel& m, std::size_t topic, std::size_t n) {
  const std::size_t v = m.vocab_size();
  std::vector<std::size_t> ids(v);
  for (std::size_t w = 0; w < v; ++w) ids[w] = w;
  const auto* row = m.counts.topic_word.data() + topic * v;
  std::stable_sort(ids.begin(), ids.end(),
                   [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(n, v); ++i) out.push_back(m.vocab[ids[i]]);
  return out;
}

std::string_view to_string(Role r) {
  switch (r) {
    case Role::kAlpha: return "alpha";
    case Role::kBeta: return "beta";
    case Role::kGamma: return "gamma";
    case Role::kNone: break;
  }
  return "none";
}

std::string_view role_token(Category c, Role role) {
  if (c == Category::kNeed) {
    switch (role) {
      case Role::kAlpha: return kNumberToken;
      case Role::kBeta: return kQuestionToken;
      case Role::kGamma: return kLinkToken;
      case Role::kNone: break;
    }
  } else {
    switch (role) {
      case Role::kAlpha: return kMentionToken;
      case Role::kBeta: return kLinkToken;
      case Role::kGamma: return kHashToken;
      case Role::kNone: break;
    }
  }
  return {};
}

std::vector<H5Entry> h5_bucket(Category c) {
  std::vector<H5Entry> out;
  for (const std::string_view token : kGeneralizedTokens) {
    Role role = Role::kNone;
    for (const Role r : {Role::kAlpha, Role::kBeta, Role::kGamma}) {
      if (role_token(c, r) == token) role = r;
    }
    out.push_back({std::string(token), role});
  }
  return out;
}

KeywordBuckets build_buckets(std::span<const TokenList> docs, std::span<const Category> categories,
                             const TldaHyper& hyper, std::uint64_t seed, int threads) {
  if (docs.size() != categories.size()) throw UsageError("tweets and categories differ in length");
  std::array<std::vector<TokenList>, 2> split;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    split[category_index(categories[i])].push_back(docs[i]);
  }
  for (const Category c : kCategories) {
    if (split[category_index(c)].empty()) {
      throw DataError("no tweets classified as " + std::string(to_string(c)) +
                      "; cannot build keyword bucket");
    }
  }
  std::array<std::vector<std::string>, 2> k20;
#pragma omp parallel for num_threads(threads == 1 ? 1 : std::min(2, detail::resolve_threads(threads)))
  for (int i = 0; i < 2; ++i) {
    const auto ci = static_cast<std::size_t>(i);
    const TldaModel m = train_tlda(split[ci], hyper, derive_seed(seed, kChainStream, ci));
    k20[ci] = top_keywords(m, 20);
  }
  KeywordBuckets b;
  b.k20_need = std::move(k20[category_index(Category::kNeed)]);
  b.k20_availability = std::move(k20[category_index(Category::kAvailability)]);
  return b;
}

namespace {

nlohmann::ordered_json h5_json(const std::vector<H5Entry>& h5) {
  auto arr = nlohmann::ordered_json::array();
  for (const H5Entry& e : h5) {
    nlohmann::ordered_json o;
    o["token"] = e.token;
    o["role"] = e.role == Role::kNone ? nlohmann::ordered_json(nullptr)
                                      : nlohmann::ordered_json(std::string(to_string(e.role)));
    arr.push_back(std::move(o));
  }
  return arr;
}

std::vector<std::string> k20_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw DataError(std::string("buckets JSON: missing array '") + key + "'");
  }
  std::vector<std::string> out;
  for (const auto& w : j[key]) {
    if (!w.is_string()) throw DataError(std::string("buckets JSON: non-string in ") + key);
    std::string s = w.get<std::string>();
    if (is_generalized_token(s)) throw DataError("buckets JSON: generalized token in k20 list");
    if (std::find(out.begin(), out.end(), s) != out.end()) {
      throw DataError("buckets JSON: duplicate keyword '" + s + "'");
    }
    out.push_back(std::move(s));
  }
  if (out.size() > 20) throw DataError(std::string("buckets JSON: more than 20 words in ") + key);
  return out;
}

}  // namespace

void write_buckets_json(std::ostream& out, const KeywordBuckets& b) {
  nlohmann::ordered_json j;
  j["k20_need"] = b.k20_need;
  j["k20_availability"] = b.k20_availability;
  j["h5"]["need"] = h5_json(b.h5_need);
  j["h5"]["availability"] = h5_json(b.h5_availability);
  out << j.dump(2) << '\n';
}

KeywordBuckets read_buckets_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("buckets JSON: ") + e.what());
  }
  KeywordBuckets b;
  b.k20_need = k20_from(j, "k20_need");
  b.k20_availability = k20_from(j, "k20_availability");
  if (j.contains("h5")) {
    for (const Category c : kCategories) {
      const std::string key = c == Category::kNeed ? "need" : "availability";
      if (j["h5"].contains(key) && nlohmann::json(h5_json(b.h5(c))) != j["h5"][key]) {
        throw DataError("buckets JSON: h5 for " + key + " differs from the fixed role mapping");
      }
    }
  }
  return b;
}

}  // namespace cir
