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

#include "cir/common.hpp"

#include <algorithm>

#include "text_util.hpp"

namespace cir {

std::string_view to_string(Category c) {
  return c == Category::kNeed ? "Need" : "Availability";
}

std::optional<Category> parse_category(std::string_view s) {
  const std::string lower = detail::ascii_lower(detail::trim(s));
  if (lower == "need") return Category::kNeed;
  if (lower == "availability") return Category::kAvailability;
  return std::nullopt;
}

bool is_generalized_token(std::string_view token) {
  return std::find(kGeneralizedTokens.begin(), kGeneralizedTokens.end(), token) !=
         kGeneralizedTokens.end();
}

}  // namespace cir
