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

#include "cir/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <string>
#include <utility>

#include "omp_util.hpp"
#include "text_util.hpp"

namespace cir {

std::vector<std::string> tokenize(std::string_view ascii_text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < ascii_text.size()) {
    if (!detail::is_ascii_alnum(ascii_text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < ascii_text.size() && detail::is_ascii_alnum(ascii_text[j])) ++j;
    const std::string_view piece = ascii_text.substr(i, j - i);
    tokens.push_back(is_generalized_token(piece) ? std::string(piece)
                                                 : detail::ascii_lower(piece));
    i = j;
  }
  return tokens;
}

StopwordSet parse_stopwords(std::istream& in) {
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view w = detail::trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.insert(detail::ascii_lower(w));
  }
  return words;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword list: " + path.string());
  return parse_stopwords(in);
}

bool PreprocessConfig::is_stopword(std::string_view token) const {
  const std::string key(token);
  return std::any_of(stopword_lists.begin(), stopword_lists.end(),
                     [&](const StopwordSet& s) { return s.contains(key); });
}

PreprocessConfig PreprocessConfig::load_default(const std::filesystem::path& data_dir) {
  PreprocessConfig config;
  for (const char* name : {"stopwords_en.txt", "stopwords_hi.txt", "stopwords_ne.txt"}) {
    config.stopword_lists.push_back(load_stopwords(data_dir / name));
  }
  config.transliteration = TransliterationTable::load(data_dir / "devanagari.tsv");
  return config;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const PreprocessConfig& config) {
  std::erase_if(tokens, [&](const std::string& t) {
    return !is_generalized_token(t) && config.is_stopword(t);
  });
  return tokens;
}

PreprocessedTweet preprocess(const RawTweet& tweet, const PreprocessConfig& config) {
  Generalized g = generalize(tweet.text);
  const std::string ascii =
      transliterate(g.text, config.transliteration, FoldCase::kLower);
  PreprocessedTweet out;
  out.id = tweet.id;
  out.tokens = remove_stopwords(tokenize(ascii), config);
  if (config.stemming) {
    for (std::string& t : out.tokens) t = porter_stem(t);
  }
  out.stats = g.stats;
  out.has_float = g.has_float;
  out.label = tweet.label;
  return out;
}

std::vector<PreprocessedTweet> preprocess_batch_serial(std::span<const RawTweet> tweets,
                                                       const PreprocessConfig& config) {
  std::vector<PreprocessedTweet> out;
  out.reserve(tweets.size());
  for (const RawTweet& t : tweets) out.push_back(preprocess(t, config));
  return out;
}

std::vector<PreprocessedTweet> preprocess_batch(std::span<const RawTweet> tweets,
                                                const PreprocessConfig& config,
                                                int threads) {
  std::vector<PreprocessedTweet> out(tweets.size());
  const auto n = static_cast<std::ptrdiff_t>(tweets.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(detail::resolve_threads(threads))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = preprocess(tweets[static_cast<std::size_t>(i)], config);
  }
  return out;
}

}  // namespace cir
