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

#include "cir/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace cir {
namespace {

std::size_t require_relevant(const QrelSet& qrels, Category c) {
  const std::size_t n = qrels.relevant_count(c);
  if (n == 0) {
    throw DataError("no relevant judgments for category " + std::string(to_string(c)) +
                    "; recall and average precision are undefined");
  }
  return n;
}

std::size_t relevant_in_top(std::span<const std::string> ranked, const QrelSet& qrels,
                            Category c, std::size_t k) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) hits += qrels.is_relevant(ranked[i], c);
  return hits;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

double precision_at_k(std::span<const std::string> ranked, const QrelSet& qrels, Category c,
                      std::size_t k) {
  if (k < 1) throw UsageError("k must be >= 1");
  return static_cast<double>(relevant_in_top(ranked, qrels, c, k)) / static_cast<double>(k);
}

double recall_at_k(std::span<const std::string> ranked, const QrelSet& qrels, Category c,
                   std::size_t k) {
  if (k < 1) throw UsageError("k must be >= 1");
  const std::size_t total = require_relevant(qrels, c);
  return static_cast<double>(relevant_in_top(ranked, qrels, c, k)) / static_cast<double>(total);
}

double average_precision(std::span<const std::string> ranked, const QrelSet& qrels, Category c) {
  const std::size_t total = require_relevant(qrels, c);
  double sum = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (!qrels.is_relevant(ranked[i], c)) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(total);
}

std::vector<std::string> ranked_ids(std::span<const RankedEntry> entries) {
  std::vector<std::string> ids;
  ids.reserve(entries.size());
  for (const auto& e : entries) ids.push_back(e.id);
  return ids;
}

const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows = {
      {"DIA_LAB_NITK", Category::kAvailability, {0.5800, 0.1633, 0.1096}},
      {"DIA_LAB_NITK", Category::kNeed, {0.1900, 0.1241, 0.0266}},
      {"NU_Team", Category::kAvailability, {0.1400, 0.0582, 0.0082}},
      {"NU_Team", Category::kNeed, {0.0000, 0.0375, 0.0011}},
  };
  return rows;
}

double reference_map(const std::string& system) {
  double sum = 0;
  int n = 0;
  for (const auto& r : reference_rows()) {
    if (r.system == system) {
      sum += r.metrics.average_precision;
      ++n;
    }
  }
  if (n == 0) throw UsageError("unknown reference system '" + system + "'");
  return sum / n;
}

EvalReport build_report(std::span<const std::string> need_ranking,
                        std::span<const std::string> availability_ranking, const QrelSet& qrels) {
  EvalReport r;
  for (const Category c : kCategories) {
    const auto ranked = c == Category::kNeed ? need_ranking : availability_ranking;
    if (ranked.empty()) {
      throw DataError("empty " + std::string(to_string(c)) + " ranking");
    }
    CategoryMetrics& m = c == Category::kNeed ? r.need : r.availability;
    m.precision_at_100 = precision_at_k(ranked, qrels, c, 100);
    m.recall_at_1000 = recall_at_k(ranked, qrels, c, 1000);
    m.average_precision = average_precision(ranked, qrels, c);
  }
  r.map = (r.need.average_precision + r.availability.average_precision) / 2;
  return r;
}

void write_report_text(std::ostream& out, const EvalReport& r) {
  char line[160];
  const auto row = [&](const std::string& system, Category c, const CategoryMetrics& m) {
    std::snprintf(line, sizeof line, "%-26s %-13s %9s %9s %9s\n", system.c_str(),
                  std::string(to_string(c)).c_str(), fixed4(m.precision_at_100).c_str(),
                  fixed4(m.recall_at_1000).c_str(), fixed4(m.average_precision).c_str());
    out << line;
  };
  std::snprintf(line, sizeof line, "%-26s %-13s %9s %9s %9s\n", "system", "category", "P@100",
                "R@1000", "AP");
  out << line;
  for (const Category c : {Category::kAvailability, Category::kNeed}) row("this run", c, r[c]);
  for (const auto& ref : r.references) row(ref.system + " [published]", ref.category, ref.metrics);
  out << "\nMAP this run             " << fixed4(r.map) << '\n';
  for (const std::string system : {"DIA_LAB_NITK", "NU_Team"}) {
    double avail = 0, need = 0;
    for (const auto& ref : r.references) {
      if (ref.system != system) continue;
      (ref.category == Category::kNeed ? need : avail) = ref.metrics.average_precision;
    }
    std::snprintf(line, sizeof line, "MAP %-24s %s = mean(%s, %s) [published]\n", system.c_str(),
                  fixed4(reference_map(system)).c_str(), fixed4(avail).c_str(),
                  fixed4(need).c_str());
    out << line;
  }
}

void write_report_json(std::ostream& out, const EvalReport& r) {
  const auto metrics = [](const CategoryMetrics& m) {
    nlohmann::ordered_json j;
    j["precision_at_100"] = m.precision_at_100;
    j["recall_at_1000"] = m.recall_at_1000;
    j["average_precision"] = m.average_precision;
    return j;
  };
  nlohmann::ordered_json j;
  j["run"]["availability"] = metrics(r.availability);
  j["run"]["need"] = metrics(r.need);
  j["run"]["map"] = r.map;
  j["reference"] = nlohmann::ordered_json::array();
  for (const auto& ref : r.references) {
    nlohmann::ordered_json row;
    row["system"] = ref.system;
    row["category"] = to_string(ref.category);
    row["metrics"] = metrics(ref.metrics);
    j["reference"].push_back(std::move(row));
  }
  for (const std::string system : {"DIA_LAB_NITK", "NU_Team"}) {
    j["reference_map"][system] = reference_map(system);
  }
  out << j.dump(2) << '\n';
}

}  // namespace cir
