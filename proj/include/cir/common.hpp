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

#ifndef CIR_COMMON_HPP_
#define CIR_COMMON_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cir {

/// Relevance class of a post.
enum class Category : std::uint8_t { kNeed = 0, kAvailability = 1 };

inline constexpr std::array<Category, 2> kCategories = {Category::kNeed,
                                                        Category::kAvailability};

std::string_view to_string(Category c);

/// Case-insensitive parse of "need" / "availability".
std::optional<Category> parse_category(std::string_view s);

/// Raised for malformed or inconsistent input data (CLI exit code 2).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for invalid arguments or configuration (CLI exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts of the five generalized tokens in one post, or summed over a corpus.
struct StatCounts {
  std::int64_t question = 0;
  std::int64_t link = 0;
  std::int64_t hash = 0;
  std::int64_t mention = 0;
  std::int64_t number = 0;

  StatCounts& operator+=(const StatCounts& o) {
    question += o.question;
    link += o.link;
    hash += o.hash;
    mention += o.mention;
    number += o.number;
    return *this;
  }
  friend bool operator==(const StatCounts&, const StatCounts&) = default;

  /// Components in feature order: question, link, hash, mention, number.
  std::array<std::int64_t, 5> as_array() const {
    return {question, link, hash, mention, number};
  }
};

// Generalized tokens, always uppercase in token streams.
inline constexpr std::string_view kQuestionToken = "QUESTION";
inline constexpr std::string_view kLinkToken = "LINK";
inline constexpr std::string_view kHashToken = "HASH";
inline constexpr std::string_view kMentionToken = "MENTION";
inline constexpr std::string_view kNumberToken = "NUMBER";

inline constexpr std::array<std::string_view, 5> kGeneralizedTokens = {
    kQuestionToken, kLinkToken, kHashToken, kMentionToken, kNumberToken};

bool is_generalized_token(std::string_view token);

}  // namespace cir

#endif  // CIR_COMMON_HPP_
