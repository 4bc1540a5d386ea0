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

#include <cstddef>
#include <string>
#include <string_view>

#include "cir/preprocess.hpp"
#include "text_util.hpp"

namespace cir {
namespace {

using detail::is_ascii_alnum;
using detail::is_ascii_digit;
using detail::is_ascii_space;

bool istarts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (s.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (detail::ascii_lower(s[pos + i]) != prefix[i]) return false;
  }
  return true;
}

void append_token(std::string& out, std::string_view token) {
  out += ' ';
  out += token;
  out += ' ';
}

std::size_t skip_to_space(std::string_view s, std::size_t i) {
  while (i < s.size() && !is_ascii_space(s[i])) ++i;
  return i;
}

// Scheme-prefixed URLs and bare t.co short links, up to the next whitespace.
std::string replace_links(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    bool at_link = istarts_with(s, i, "http://") || istarts_with(s, i, "https://");
    if (!at_link && istarts_with(s, i, "t.co/")) {
      const char prev = i == 0 ? ' ' : s[i - 1];
      at_link = !is_ascii_alnum(prev) && prev != '.' && prev != '/';
    }
    if (at_link) {
      append_token(out, kLinkToken);
      i = skip_to_space(s, i);
    } else {
      out += s[i++];
    }
  }
  return out;
}

bool is_handle_char(char c) { return is_ascii_alnum(c) || c == '_'; }

std::string replace_mentions(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '@' && i + 1 < s.size() && is_handle_char(s[i + 1])) {
      append_token(out, kMentionToken);
      ++i;
      while (i < s.size() && is_handle_char(s[i])) ++i;
    } else {
      out += s[i++];
    }
  }
  return out;
}

// Devanagari danda / double danda (U+0964, U+0965) end a hashtag.
bool is_danda_at(std::string_view s, std::size_t i) {
  return s.size() - i >= 3 && static_cast<unsigned char>(s[i]) == 0xE0 &&
         static_cast<unsigned char>(s[i + 1]) == 0xA5 &&
         (static_cast<unsigned char>(s[i + 2]) == 0xA4 ||
          static_cast<unsigned char>(s[i + 2]) == 0xA5);
}

bool is_hashtag_byte(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  return is_handle_char(s[i]) || (c >= 0x80 && !is_danda_at(s, i));
}

std::string replace_hashtags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '#' && i + 1 < s.size() && is_hashtag_byte(s, i + 1)) {
      append_token(out, kHashToken);
      ++i;
      while (i < s.size() && is_hashtag_byte(s, i)) ++i;
    } else {
      out += s[i++];
    }
  }
  return out;
}

// Length in bytes of a digit at `i`: 1 for ASCII, 3 for Devanagari digits
// (U+0966..U+096F), 0 otherwise.
std::size_t digit_len(std::string_view s, std::size_t i) {
  if (i >= s.size()) return 0;
  if (is_ascii_digit(s[i])) return 1;
  if (s.size() - i >= 3 && static_cast<unsigned char>(s[i]) == 0xE0 &&
      static_cast<unsigned char>(s[i + 1]) == 0xA5) {
    const auto c = static_cast<unsigned char>(s[i + 2]);
    if (c >= 0xA6 && c <= 0xAF) return 3;
  }
  return 0;
}

std::size_t skip_digits(std::string_view s, std::size_t i) {
  while (std::size_t n = digit_len(s, i)) i += n;
  return i;
}

std::string replace_numbers(std::string_view s, bool& has_float) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t start = i;
    if ((s[i] == '+' || s[i] == '-') && digit_len(s, i + 1) &&
        (i == 0 || !is_ascii_alnum(s[i - 1]))) {
      start = i;
      ++i;
    }
    if (digit_len(s, i)) {
      i = skip_digits(s, i);
      if (i < s.size() && s[i] == '.' && digit_len(s, i + 1)) {
        i = skip_digits(s, i + 1);
        has_float = true;
      }
      append_token(out, kNumberToken);
    } else {
      i = start;
      out += s[i++];
    }
  }
  return out;
}

std::string replace_questions(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '?') {
      append_token(out, kQuestionToken);
      ++i;
    } else if (s.size() - i >= 3 && static_cast<unsigned char>(s[i]) == 0xEF &&
               static_cast<unsigned char>(s[i + 1]) == 0xBC &&
               static_cast<unsigned char>(s[i + 2]) == 0x9F) {
      // U+FF1F FULLWIDTH QUESTION MARK
      append_token(out, kQuestionToken);
      i += 3;
    } else {
      out += s[i++];
    }
  }
  return out;
}

void bump(StatCounts& stats, std::string_view token) {
  if (token == kQuestionToken) ++stats.question;
  else if (token == kLinkToken) ++stats.link;
  else if (token == kHashToken) ++stats.hash;
  else if (token == kMentionToken) ++stats.mention;
  else if (token == kNumberToken) ++stats.number;
}

// Counts every generalized token delimited by ASCII non-alphanumerics (the
// padded replacements and literal ones alike). A keyword run touching a
// non-ASCII byte could merge with transliterated letters later, so it is
// lowercased instead of counted.
StatCounts count_and_settle(std::string& s) {
  StatCounts stats;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_ascii_alnum(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && is_ascii_alnum(s[j])) ++j;
    const std::string_view run(s.data() + i, j - i);
    if (is_generalized_token(run)) {
      const bool left_ok = i == 0 || static_cast<unsigned char>(s[i - 1]) < 0x80;
      const bool right_ok = j == s.size() || static_cast<unsigned char>(s[j]) < 0x80;
      if (left_ok && right_ok) {
        bump(stats, run);
      } else {
        for (std::size_t k = i; k < j; ++k) s[k] = detail::ascii_lower(s[k]);
      }
    }
    i = j;
  }
  return stats;
}

}  // namespace

Generalized generalize(std::string_view text) {
  Generalized g;
  std::string s = replace_links(text);
  s = replace_mentions(s);
  s = replace_hashtags(s);
  s = replace_numbers(s, g.has_float);
  s = replace_questions(s);
  g.stats = count_and_settle(s);
  g.text = std::move(s);
  return g;
}

}  // namespace cir
