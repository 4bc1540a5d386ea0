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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "cir/preprocess.hpp"
#include "text_util.hpp"

namespace cir {
namespace {

struct FoldEntry {
  char32_t cp;
  const char* ascii;
};

constexpr FoldEntry kFoldTable[] = {
#include "unicode_fold_table.inc"
};

constexpr char32_t kMalformed = 0xFFFFFFFF;

bool is_devanagari(char32_t cp) { return cp >= 0x0900 && cp <= 0x097F; }

bool is_consonant(char32_t cp) {
  return (cp >= 0x0915 && cp <= 0x0939) || (cp >= 0x0958 && cp <= 0x095F) ||
         (cp >= 0x0978 && cp <= 0x097F);
}

bool is_vowel_sign(char32_t cp) {
  return (cp >= 0x093A && cp <= 0x093B) || (cp >= 0x093E && cp <= 0x094C) ||
         (cp >= 0x094E && cp <= 0x094F) || (cp >= 0x0955 && cp <= 0x0957) ||
         (cp >= 0x0962 && cp <= 0x0963);
}

constexpr char32_t kVirama = 0x094D;
constexpr char32_t kNukta = 0x093C;

bool is_joiner(char32_t cp) { return cp == 0x200C || cp == 0x200D; }

// Letters and signs that continue a Devanagari word (digits and dandas do
// not).
bool continues_word(char32_t cp) {
  return is_devanagari(cp) && !(cp >= 0x0964 && cp <= 0x0970);
}

}  // namespace

std::string_view unicode_ascii_fold(char32_t cp) {
  const auto* end = std::end(kFoldTable);
  const auto* it = std::lower_bound(
      std::begin(kFoldTable), end, cp,
      [](const FoldEntry& e, char32_t key) { return e.cp < key; });
  if (it == end || it->cp != cp) return {};
  return it->ascii;
}

TransliterationTable TransliterationTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open transliteration table: " + path.string());
  return parse(in, path.string());
}

TransliterationTable TransliterationTable::parse(std::istream& in,
                                                 std::string_view source) {
  TransliterationTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    const auto fail = [&] {
      return DataError(std::string(source) + ":" + std::to_string(lineno) +
                       ": expected codepoint-hex<TAB>ascii");
    };
    if (tab == std::string::npos) throw fail();
    const std::string_view hex = detail::trim(std::string_view(line).substr(0, tab));
    std::uint32_t cp = 0;
    const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), cp, 16);
    if (ec != std::errc() || ptr != hex.data() + hex.size() || hex.empty()) throw fail();
    std::string value = line.substr(tab + 1);
    if (std::any_of(value.begin(), value.end(),
                    [](char c) { return static_cast<unsigned char>(c) >= 0x80; })) {
      throw DataError(std::string(source) + ":" + std::to_string(lineno) +
                      ": transliteration must be ASCII");
    }
    table.set(static_cast<char32_t>(cp), std::move(value));
  }
  return table;
}

void TransliterationTable::set(char32_t cp, std::string ascii) {
  entries_[cp] = std::move(ascii);
}

const std::string* TransliterationTable::find(char32_t cp) const {
  const auto it = entries_.find(cp);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string transliterate(std::string_view text, const TransliterationTable& table,
                          FoldCase fold) {
  std::vector<char32_t> cps;
  cps.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const char32_t cp = detail::decode_utf8(text, i);
    if (cp != kMalformed) cps.push_back(cp);
  }

  // Next codepoint that decides the inherent vowel: nukta and joiners are
  // transparent.
  const auto next_significant = [&](std::size_t i) -> char32_t {
    for (++i; i < cps.size(); ++i) {
      if (cps[i] != kNukta && !is_joiner(cps[i])) return cps[i];
    }
    return 0;
  };

  std::string out;
  out.reserve(text.size());
  const auto append = [&](std::string_view ascii) {
    if (fold == FoldCase::kLower) {
      for (char c : ascii) out += detail::ascii_lower(c);
    } else {
      out += ascii;
    }
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (cp < 0x80) {
      out += static_cast<char>(cp);
      continue;
    }
    if (is_devanagari(cp)) {
      if (const std::string* roman = table.find(cp)) append(*roman);
      if (is_consonant(cp)) {
        const char32_t next = next_significant(i);
        if (continues_word(next) && !is_vowel_sign(next) && next != kVirama) {
          out += 'a';
        }
      }
      continue;
    }
    append(unicode_ascii_fold(cp));
  }
  return out;
}

}  // namespace cir
