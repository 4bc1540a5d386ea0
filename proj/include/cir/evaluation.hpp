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

// Trec-style retrieval metrics and the comparison report.

#ifndef CIR_EVALUATION_HPP_
#define CIR_EVALUATION_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cir/common.hpp"
#include "cir/corpus.hpp"
#include "cir/ranking.hpp"

namespace cir {

/// Relevant ids among the first min(k, n) positions, divided by k.
/// Throws UsageError for k < 1.
double precision_at_k(std::span<const std::string> ranked, const QrelSet& qrels, Category c,
                      std::size_t k);

/// Relevant ids in the top k over all relevant ids. Throws DataError when the
/// category has no relevant ids, UsageError for k < 1.
double recall_at_k(std::span<const std::string> ranked, const QrelSet& qrels, Category c,
                   std::size_t k);

/// Sum of precision at each relevant rank over the total relevant count.
/// Throws DataError when the category has no relevant ids.
double average_precision(std::span<const std::string> ranked, const QrelSet& qrels, Category c);

std::vector<std::string> ranked_ids(std::span<const RankedEntry> entries);

struct CategoryMetrics {
  double precision_at_100 = 0;
  double recall_at_1000 = 0;
  double average_precision = 0;
};

/// Published per-category results kept for comparison.
struct ReferenceRow {
  std::string system;
  Category category;
  CategoryMetrics metrics;
};

/// DIA_LAB_NITK and NU_Team rows for both categories.
const std::vector<ReferenceRow>& reference_rows();

/// Mean of a system's two per-category APs.
double reference_map(const std::string& system);

struct EvalReport {
  CategoryMetrics need;
  CategoryMetrics availability;
  double map = 0;
  std::vector<ReferenceRow> references = reference_rows();

  const CategoryMetrics& operator[](Category c) const {
    return c == Category::kNeed ? need : availability;
  }
};

/// Throws DataError when a ranking is empty or a category has no relevant
/// judgments.
EvalReport build_report(std::span<const std::string> need_ranking,
                        std::span<const std::string> availability_ranking, const QrelSet& qrels);

void write_report_text(std::ostream& out, const EvalReport& report);
void write_report_json(std::ostream& out, const EvalReport& report);

}  // namespace cir

#endif  // CIR_EVALUATION_HPP_
