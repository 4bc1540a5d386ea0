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

// Text normalization of raw posts into token streams:
//   generalize -> transliterate -> tokenize -> remove_stopwords -> porter_stem
// Every stage is a pure function; PreprocessConfig is immutable once built.

#ifndef CIR_PREPROCESS_HPP_
#define CIR_PREPROCESS_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cir/common.hpp"
#include "cir/corpus.hpp"

namespace cir {

struct PreprocessedTweet {
  std::string id;
  std::vector<std::string> tokens;
  StatCounts stats;
  bool has_float = false;
  std::optional<Category> label;

  friend bool operator==(const PreprocessedTweet&,
                         const PreprocessedTweet&) = default;
};

struct Generalized {
  std::string text;
  StatCounts stats;
  bool has_float = false;
};

/// Replaces, in order, hyperlinks, @mentions, #hashtags, numbers and '?' by
/// the padded generalized tokens and counts each replacement. Words already
/// spelled exactly as an uppercase generalized token are counted as well, so
/// generalizing an already generalized stream is a fixed point.
Generalized generalize(std::string_view text);

/// Codepoint -> ASCII romanization used for Devanagari.
class TransliterationTable {
 public:
  TransliterationTable() = default;

  /// Reads `codepoint-hex<TAB>ascii` rows ('#' comments allowed).
  static TransliterationTable load(const std::filesystem::path& path);
  static TransliterationTable parse(std::istream& in,
                                    std::string_view source = "<stream>");

  void set(char32_t cp, std::string ascii);
  const std::string* find(char32_t cp) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<char32_t, std::string> entries_;
};

enum class FoldCase { kPreserve, kLower };

/// Maps UTF-8 text to ASCII. Devanagari goes through `table` (consonants
/// carry an inherent 'a' unless followed by a vowel sign, virama, or the end
/// of the word); other codepoints go through compatibility decomposition
/// with combining marks removed; anything still non-ASCII is dropped.
/// Malformed UTF-8 bytes are dropped. With FoldCase::kLower the output of
/// non-ASCII codepoints is lowercased (ASCII input is never touched).
std::string transliterate(std::string_view text,
                          const TransliterationTable& table,
                          FoldCase fold = FoldCase::kPreserve);

/// ASCII residue of the compatibility decomposition of one codepoint, with
/// combining marks and other non-ASCII parts removed. Empty when nothing
/// ASCII remains.
std::string_view unicode_ascii_fold(char32_t cp);

/// Splits on runs of non-alphanumerics and lowercases; exact uppercase
/// generalized tokens are kept as-is.
std::vector<std::string> tokenize(std::string_view ascii_text);

using StopwordSet = std::unordered_set<std::string>;

/// One word per line, '#' comments, lowercased on load.
StopwordSet load_stopwords(const std::filesystem::path& path);
StopwordSet parse_stopwords(std::istream& in);

struct PreprocessConfig {
  std::vector<StopwordSet> stopword_lists;  // English, Hindi, Nepali, ...
  TransliterationTable transliteration;
  bool stemming = true;

  bool is_stopword(std::string_view token) const;

  /// Loads the bundled lists (stopwords_{en,hi,ne}.txt, devanagari.tsv)
  /// from `data_dir`.
  static PreprocessConfig load_default(const std::filesystem::path& data_dir);
};

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const PreprocessConfig& config);

/// Porter stemmer (the reference implementation variant: step 2 includes
/// "bli"->"ble" and "logi"->"log"). Generalized tokens and words of length
/// <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

PreprocessedTweet preprocess(const RawTweet& tweet,
                             const PreprocessConfig& config);

/// Serial reference for the batch kernel below.
std::vector<PreprocessedTweet> preprocess_batch_serial(
    std::span<const RawTweet> tweets, const PreprocessConfig& config);

/// OpenMP per-tweet kernel; output order matches input order and equals the
/// serial reference for any thread count. threads <= 0 uses the OpenMP
/// default.
std::vector<PreprocessedTweet> preprocess_batch(
    std::span<const RawTweet> tweets, const PreprocessConfig& config,
    int threads = 0);

}  // namespace cir

#endif  // CIR_PREPROCESS_HPP_
