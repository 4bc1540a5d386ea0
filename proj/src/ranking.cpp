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

#include "cir/ranking.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "cir/preprocess.hpp"
#include "omp_util.hpp"
#include "text_util.hpp"

namespace cir {

ClassifiedTweet classify(const PreprocessedTweet& tweet, const ClassScores& scores) {
  return {tweet.id, tweet.tokens, tweet.stats, tweet.has_float, scores.argmax(), scores};
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double similarity(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

double lambda_pool(std::span<const ClassifiedTweet> classified, Category c) {
  std::optional<double> best;
  for (const ClassifiedTweet& t : classified) {
    if (t.category == c) best = std::max(best.value_or(t.scores[c]), t.scores[c]);
  }
  if (!best) {
    throw DataError("no tweets classified as " + std::string(to_string(c)) +
                    "; lambda pool undefined");
  }
  return *best;
}

AlphaCounts alpha_counts(const ClassifiedTweet& tweet, Category c) {
  const auto count = [&](Role r) {
    const std::string_view token = role_token(c, r);
    const StatCounts& s = tweet.stats;
    if (token == kQuestionToken) return s.question;
    if (token == kLinkToken) return s.link;
    if (token == kHashToken) return s.hash;
    if (token == kMentionToken) return s.mention;
    return s.number;
  };
  return {count(Role::kAlpha), count(Role::kBeta), count(Role::kGamma)};
}

namespace {

bool any_similar(std::string_view word, const TokenList& tokens, double threshold) {
  for (const std::string& t : tokens) {
    if (similarity(word, t) > threshold) return true;
  }
  return false;
}

}  // namespace

int bucket_matches(const TokenList& tokens, const KeywordBuckets& buckets, Category c,
                   double threshold) {
  int m = 0;
  for (const std::string& w : buckets.k20(c)) m += any_similar(w, tokens, threshold);
  for (const H5Entry& e : buckets.h5(c)) m += any_similar(e.token, tokens, threshold);
  return m;
}

bool negative_condition(const ClassifiedTweet& tweet, const RankConfig& config) {
  if (tweet.has_float) return true;
  for (const std::string& q : config.negative_keywords) {
    if (any_similar(q, tweet.tokens, config.threshold)) return true;
  }
  return false;
}

double rank_score(const ClassifiedTweet& tweet, const KeywordBuckets& buckets, double lambda,
                  const RankConfig& config) {
  const Category c = tweet.category;
  const int m = bucket_matches(tweet.tokens, buckets, c, config.threshold);
  double s = tweet.scores[c];
  for (int i = 0; i < m; ++i) s *= lambda;
  if (negative_condition(tweet, config)) s = -s;
  return static_cast<double>(alpha_counts(tweet, c).sum()) * s;
}

std::vector<double> score_batch_serial(std::span<const ClassifiedTweet> tweets,
                                       const KeywordBuckets& buckets, double lambda,
                                       const RankConfig& config) {
  std::vector<double> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) out.push_back(rank_score(t, buckets, lambda, config));
  return out;
}

std::vector<double> score_batch(std::span<const ClassifiedTweet> tweets,
                                const KeywordBuckets& buckets, double lambda,
                                const RankConfig& config, int threads) {
  std::vector<double> out(tweets.size());
  const auto n = static_cast<std::int64_t>(tweets.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(detail::resolve_threads(threads))
  for (std::int64_t i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    out[iu] = rank_score(tweets[iu], buckets, lambda, config);
  }
  return out;
}

std::vector<RankedEntry> rank_category(std::span<const ClassifiedTweet> classified,
                                       const KeywordBuckets& buckets, Category c,
                                       const RankConfig& config, int threads) {
  if (!(config.threshold > 0.0 && config.threshold <= 1.0)) {
    throw UsageError("similarity threshold C must be in (0, 1]");
  }
  const double lambda = config.lambda_override ? *config.lambda_override
                                               : lambda_pool(classified, c);
  std::vector<ClassifiedTweet> members;
  for (const auto& t : classified) {
    if (t.category == c) members.push_back(t);
  }
  if (members.empty()) {
    throw DataError("no tweets classified as " + std::string(to_string(c)));
  }
  const std::vector<double> scores = score_batch(members, buckets, lambda, config, threads);
  std::vector<std::size_t> order(members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    const double pa = members[a].scores[c], pb = members[b].scores[c];
    if (pa != pb) return pa > pb;
    return members[a].id < members[b].id;
  });
  std::vector<RankedEntry> out;
  out.reserve(order.size());
  for (const std::size_t i : order) out.push_back({members[i].id, scores[i], c});
  return out;
}

void write_ranking_tsv(std::ostream& out, std::span<const RankedEntry> entries) {
  char buf[64];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, entries[i].rank_score);
    out << (i + 1) << '\t' << entries[i].id << '\t' << to_string(entries[i].category) << '\t'
        << std::string_view(buf, static_cast<std::size_t>(end - buf)) << '\n';
  }
}

std::vector<RankedEntry> parse_ranking_tsv(std::istream& in, std::string_view source) {
  std::vector<RankedEntry> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto fail = [&](const std::string& why) {
      return DataError(std::string(source) + ":" + std::to_string(lineno) + ": " + why);
    };
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 4) throw fail("expected rank<TAB>id<TAB>category<TAB>rank_score");
    std::size_t rank = 0;
    const auto r = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), rank);
    if (r.ec != std::errc() || r.ptr != fields[0].data() + fields[0].size()) {
      throw fail("bad rank '" + std::string(fields[0]) + "'");
    }
    if (rank != out.size() + 1) throw fail("ranks must run 1, 2, 3, ...");
    const auto cat = parse_category(fields[2]);
    if (!cat) throw fail("unknown category '" + std::string(fields[2]) + "'");
    double score = 0;
    const auto s = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), score);
    if (s.ec != std::errc() || s.ptr != fields[3].data() + fields[3].size()) {
      throw fail("bad rank_score '" + std::string(fields[3]) + "'");
    }
    std::string id(fields[1]);
    if (id.empty()) throw fail("empty id");
    if (!seen.insert(id).second) throw fail("duplicate id '" + id + "'");
    out.push_back({std::move(id), score, *cat});
  }
  return out;
}

std::vector<RankedEntry> load_ranking(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open ranking file: " + path.string());
  return parse_ranking_tsv(in, path.string());
}

}  // namespace cir
