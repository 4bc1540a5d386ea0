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

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "cir/preprocess.hpp"
#include "text_util.hpp"

namespace cir {
namespace {

using json = nlohmann::ordered_json;

DataError line_error(std::string_view source, std::size_t lineno, const std::string& what) {
  return DataError(std::string(source) + ":" + std::to_string(lineno) + ": " + what);
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::optional<Category> parse_label_or_throw(std::string_view label, std::string_view source,
                                             std::size_t lineno) {
  auto c = parse_category(label);
  if (!c) throw line_error(source, lineno, "unknown label \"" + std::string(label) + "\"");
  return c;
}

// Strips a trailing CR so CRLF files read like LF files.
void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

TweetFormat parse_tweet_format(std::string_view s) {
  const std::string lower = detail::ascii_lower(s);
  if (lower == "jsonl") return TweetFormat::kJsonl;
  if (lower == "tsv") return TweetFormat::kTsv;
  throw UsageError("unknown tweet format \"" + std::string(s) + "\" (expected jsonl or tsv)");
}

std::vector<RawTweet> parse_tweets(std::istream& in, TweetFormat format,
                                   std::string_view source) {
  std::vector<RawTweet> tweets;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    chomp(line);
    if (detail::trim(line).empty()) continue;
    RawTweet t;
    if (format == TweetFormat::kJsonl) {
      json obj;
      try {
        obj = json::parse(line);
      } catch (const json::parse_error& e) {
        throw line_error(source, lineno, std::string("malformed JSON: ") + e.what());
      }
      if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
          !obj.contains("text") || !obj["text"].is_string()) {
        throw line_error(source, lineno, "expected object with string \"id\" and \"text\"");
      }
      t.id = obj["id"].get<std::string>();
      t.text = obj["text"].get<std::string>();
      if (obj.contains("label") && !obj["label"].is_null()) {
        if (!obj["label"].is_string()) throw line_error(source, lineno, "label must be a string");
        t.label = parse_label_or_throw(obj["label"].get<std::string>(), source, lineno);
      }
    } else {
      const auto tab1 = line.find('\t');
      const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
      if (tab2 == std::string::npos) {
        throw line_error(source, lineno, "expected id<TAB>label<TAB>text");
      }
      t.id = line.substr(0, tab1);
      const std::string label = line.substr(tab1 + 1, tab2 - tab1 - 1);
      if (label != "-") t.label = parse_label_or_throw(label, source, lineno);
      t.text = line.substr(tab2 + 1);
    }
    if (t.id.empty()) throw line_error(source, lineno, "empty id");
    if (!seen.insert(t.id).second) {
      throw line_error(source, lineno, "duplicate id \"" + t.id + "\"");
    }
    tweets.push_back(std::move(t));
  }
  if (in.bad()) throw DataError(std::string(source) + ": read error");
  return tweets;
}

std::vector<RawTweet> load_tweets(const std::filesystem::path& path, TweetFormat format) {
  auto in = open_or_throw(path);
  return parse_tweets(in, format, path.string());
}

void write_tweets_jsonl(std::ostream& out, std::span<const RawTweet> tweets) {
  for (const RawTweet& t : tweets) {
    json obj;
    obj["id"] = t.id;
    obj["text"] = t.text;
    if (t.label) obj["label"] = to_string(*t.label);
    out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

void QrelSet::add(const std::string& id, Category category, int grade) {
  auto [it, inserted] = judgments_.try_emplace({id, category}, grade);
  if (!inserted && it->second != grade) {
    throw DataError("conflicting judgments for (" + id + ", " +
                    std::string(to_string(category)) + "): " + std::to_string(it->second) +
                    " vs " + std::to_string(grade));
  }
}

std::optional<int> QrelSet::grade(const std::string& id, Category category) const {
  const auto it = judgments_.find({id, category});
  if (it == judgments_.end()) return std::nullopt;
  return it->second;
}

bool QrelSet::is_relevant(const std::string& id, Category category) const {
  const auto g = grade(id, category);
  return g && *g > 0;
}

std::size_t QrelSet::relevant_count(Category category) const {
  std::size_t n = 0;
  for (const auto& [key, g] : judgments_) {
    if (key.second == category && g > 0) ++n;
  }
  return n;
}

QrelSet parse_qrels(std::istream& in, std::string_view source) {
  QrelSet qrels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    chomp(line);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 3 || fields[0].empty()) {
      throw line_error(source, lineno, "expected id<TAB>category<TAB>grade");
    }
    const auto category = parse_category(fields[1]);
    if (!category) {
      throw line_error(source, lineno, "unknown category \"" + std::string(fields[1]) + "\"");
    }
    const std::string_view g = detail::trim(fields[2]);
    int grade = -1;
    const auto [ptr, ec] = std::from_chars(g.data(), g.data() + g.size(), grade);
    if (ec != std::errc() || ptr != g.data() + g.size() || grade < 0) {
      throw line_error(source, lineno, "grade must be a non-negative integer");
    }
    try {
      qrels.add(std::string(fields[0]), *category, grade);
    } catch (const DataError& e) {
      throw line_error(source, lineno, e.what());
    }
  }
  return qrels;
}

QrelSet load_qrels(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_qrels(in, path.string());
}

CorpusStats corpus_stats(std::span<const PreprocessedTweet> tweets) {
  CorpusStats stats;
  for (const PreprocessedTweet& t : tweets) {
    if (!t.label) throw DataError("corpus_stats: tweet \"" + t.id + "\" has no label");
    stats[*t.label] += t.stats;
  }
  return stats;
}

void write_corpus_stats_table(std::ostream& out, const CorpusStats& stats) {
  out << std::left << std::setw(14) << "Category";
  for (std::string_view name : {"Question", "Link", "Hash", "Mention", "Number"}) {
    out << std::right << std::setw(10) << name;
  }
  out << '\n';
  for (Category c : kCategories) {
    out << std::left << std::setw(14) << to_string(c);
    for (std::int64_t v : stats[c].as_array()) out << std::right << std::setw(10) << v;
    out << '\n';
  }
}

void write_preprocessed_jsonl(std::ostream& out, std::span<const PreprocessedTweet> tweets) {
  for (const PreprocessedTweet& t : tweets) {
    json obj;
    obj["id"] = t.id;
    obj["tokens"] = t.tokens;
    obj["stats"] = {{"question", t.stats.question},
                    {"link", t.stats.link},
                    {"hash", t.stats.hash},
                    {"mention", t.stats.mention},
                    {"number", t.stats.number}};
    obj["has_float"] = t.has_float;
    if (t.label) obj["label"] = to_string(*t.label);
    out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

std::vector<PreprocessedTweet> parse_preprocessed_jsonl(std::istream& in,
                                                        std::string_view source) {
  std::vector<PreprocessedTweet> tweets;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    chomp(line);
    if (detail::trim(line).empty()) continue;
    PreprocessedTweet t;
    try {
      const json obj = json::parse(line);
      t.id = obj.at("id").get<std::string>();
      t.tokens = obj.at("tokens").get<std::vector<std::string>>();
      const json& s = obj.at("stats");
      t.stats.question = s.at("question").get<std::int64_t>();
      t.stats.link = s.at("link").get<std::int64_t>();
      t.stats.hash = s.at("hash").get<std::int64_t>();
      t.stats.mention = s.at("mention").get<std::int64_t>();
      t.stats.number = s.at("number").get<std::int64_t>();
      t.has_float = obj.value("has_float", false);
      if (obj.contains("label") && !obj["label"].is_null()) {
        t.label = parse_label_or_throw(obj["label"].get<std::string>(), source, lineno);
      }
    } catch (const json::exception& e) {
      throw line_error(source, lineno, std::string("malformed preprocessed tweet: ") + e.what());
    }
    for (std::int64_t v : t.stats.as_array()) {
      if (v < 0) throw line_error(source, lineno, "negative stat count");
    }
    if (t.id.empty()) throw line_error(source, lineno, "empty id");
    if (!seen.insert(t.id).second) {
      throw line_error(source, lineno, "duplicate id \"" + t.id + "\"");
    }
    tweets.push_back(std::move(t));
  }
  return tweets;
}

std::vector<PreprocessedTweet> load_preprocessed(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_preprocessed_jsonl(in, path.string());
}

}  // namespace cir
