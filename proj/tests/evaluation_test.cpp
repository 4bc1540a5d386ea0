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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "support/metric_oracle.hpp"

namespace cir {
namespace {

QrelSet qrels_of(const std::vector<std::string>& relevant, Category c) {
  QrelSet q;
  for (const auto& id : relevant) q.add(id, c, 1);
  return q;
}

const Category kNeed = Category::kNeed;

TEST(PrecisionTest, Examples) {
  const std::vector<std::string> ranked = {"r1", "n1", "r2", "n2"};
  const QrelSet q = qrels_of({"r1", "r2"}, kNeed);
  EXPECT_EQ(precision_at_k(ranked, q, kNeed, 4), 0.5);
  EXPECT_EQ(precision_at_k(ranked, q, kNeed, 1), 1.0);
  // Denominator stays k past the end of the list.
  EXPECT_EQ(precision_at_k(ranked, q, kNeed, 100), 0.02);
  EXPECT_EQ(precision_at_k({}, q, kNeed, 10), 0.0);
  EXPECT_THROW(precision_at_k(ranked, q, kNeed, 0), UsageError);
  // Relevance for the other category does not count.
  EXPECT_EQ(precision_at_k(ranked, q, Category::kAvailability, 4), 0.0);
}

TEST(PrecisionTest, GradeZeroIsNotRelevant) {
  QrelSet q;
  q.add("a", kNeed, 0);
  q.add("b", kNeed, 2);
  const std::vector<std::string> ranked = {"a", "b"};
  EXPECT_EQ(precision_at_k(ranked, q, kNeed, 2), 0.5);
}

TEST(RecallTest, Examples) {
  std::vector<std::string> rel;
  for (int i = 0; i < 10; ++i) rel.push_back("r" + std::to_string(i));
  const QrelSet q = qrels_of(rel, kNeed);
  const std::vector<std::string> ranked = {"r0", "x", "r1", "r2", "y"};
  EXPECT_DOUBLE_EQ(recall_at_k(ranked, q, kNeed, 5), 0.3);
  EXPECT_EQ(recall_at_k(rel, q, kNeed, 1000), 1.0);
  EXPECT_THROW(recall_at_k(ranked, QrelSet{}, kNeed, 5), DataError);
  EXPECT_THROW(recall_at_k(ranked, q, kNeed, 0), UsageError);
}

TEST(AveragePrecisionTest, Examples) {
  const QrelSet q = qrels_of({"a", "c"}, kNeed);
  const std::vector<std::string> ranked = {"a", "b", "c"};
  EXPECT_DOUBLE_EQ(average_precision(ranked, q, kNeed), (1.0 + 2.0 / 3.0) / 2);
  const std::vector<std::string> first = {"a", "c", "b"};
  EXPECT_EQ(average_precision(first, q, kNeed), 1.0);
  const std::vector<std::string> none = {"x", "y"};
  EXPECT_EQ(average_precision(none, q, kNeed), 0.0);
  EXPECT_THROW(average_precision(ranked, QrelSet{}, kNeed), DataError);
}

TEST(OracleTest, RandomInstancesMatchExactly) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Category c = kCategories[rng.below(2)];
    const auto m = testing::random_instance(rng, c);
    for (const std::size_t k : {std::size_t{1}, std::size_t{5}, std::size_t{10}, std::size_t{100}}) {
      ASSERT_EQ(precision_at_k(m.ranked, m.qrels, c, k), testing::oracle_precision_at(m.rel, k));
      ASSERT_EQ(recall_at_k(m.ranked, m.qrels, c, k),
                testing::oracle_recall_at(m.rel, k, m.total_relevant));
    }
    ASSERT_EQ(average_precision(m.ranked, m.qrels, c),
              testing::oracle_average_precision(m.rel, m.total_relevant));
  }
}

TEST(PropertyTest, PrependingRelevantNeverHurts) {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    auto m = testing::random_instance(rng, kNeed);
    const double p = precision_at_k(m.ranked, m.qrels, kNeed, 10);
    const double r = recall_at_k(m.ranked, m.qrels, kNeed, 10);
    const double ap = average_precision(m.ranked, m.qrels, kNeed);
    m.qrels.add("fresh", kNeed, 1);
    m.ranked.insert(m.ranked.begin(), "fresh");
    // The new document also joins the relevant total, so compare against the
    // enlarged judgment set on the original list as well.
    EXPECT_GE(precision_at_k(m.ranked, m.qrels, kNeed, 10), p);
    std::vector<std::string> old(m.ranked.begin() + 1, m.ranked.end());
    EXPECT_GE(recall_at_k(m.ranked, m.qrels, kNeed, 10), recall_at_k(old, m.qrels, kNeed, 10));
    EXPECT_GE(average_precision(m.ranked, m.qrels, kNeed), average_precision(old, m.qrels, kNeed));
    EXPECT_GE(average_precision(old, m.qrels, kNeed), 0.0);
    EXPECT_LE(recall_at_k(old, m.qrels, kNeed, 10), r);
    EXPECT_LE(average_precision(old, m.qrels, kNeed), ap);
  }
}

TEST(PropertyTest, PrependingJudgedRelevantKeepsTotals) {
  // Moving an already-relevant, unretrieved document to the top.
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    auto m = testing::random_instance(rng, kNeed);
    const double p = precision_at_k(m.ranked, m.qrels, kNeed, 10);
    const double r = recall_at_k(m.ranked, m.qrels, kNeed, 10);
    const double ap = average_precision(m.ranked, m.qrels, kNeed);
    if (!m.qrels.is_relevant("u0", kNeed)) continue;
    m.ranked.insert(m.ranked.begin(), "u0");
    EXPECT_GE(precision_at_k(m.ranked, m.qrels, kNeed, 10), p);
    EXPECT_GE(recall_at_k(m.ranked, m.qrels, kNeed, 10), r);
    EXPECT_GE(average_precision(m.ranked, m.qrels, kNeed), ap);
  }
}

TEST(PropertyTest, InvariantBelowRankK) {
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    auto m = testing::random_instance(rng, kNeed);
    const std::size_t k = 1 + rng.below(20);
    const double p = precision_at_k(m.ranked, m.qrels, kNeed, k);
    const double r = recall_at_k(m.ranked, m.qrels, kNeed, k);
    if (m.ranked.size() > k) rng.shuffle(m.ranked.begin() + static_cast<std::ptrdiff_t>(k), m.ranked.end());
    EXPECT_EQ(precision_at_k(m.ranked, m.qrels, kNeed, k), p);
    EXPECT_EQ(recall_at_k(m.ranked, m.qrels, kNeed, k), r);
  }
}

TEST(ReferenceTest, PublishedRows) {
  const auto& rows = reference_rows();
  ASSERT_EQ(rows.size(), 4u);
  const auto find = [&](const std::string& s, Category c) {
    for (const auto& r : rows) {
      if (r.system == s && r.category == c) return r.metrics;
    }
    ADD_FAILURE() << s;
    return CategoryMetrics{};
  };
  const auto ours_a = find("DIA_LAB_NITK", Category::kAvailability);
  EXPECT_EQ(ours_a.precision_at_100, 0.5800);
  EXPECT_EQ(ours_a.recall_at_1000, 0.1633);
  EXPECT_EQ(ours_a.average_precision, 0.1096);
  const auto ours_n = find("DIA_LAB_NITK", kNeed);
  EXPECT_EQ(ours_n.precision_at_100, 0.1900);
  EXPECT_EQ(ours_n.recall_at_1000, 0.1241);
  EXPECT_EQ(ours_n.average_precision, 0.0266);
  const auto nu_a = find("NU_Team", Category::kAvailability);
  EXPECT_EQ(nu_a.precision_at_100, 0.1400);
  EXPECT_EQ(nu_a.recall_at_1000, 0.0582);
  EXPECT_EQ(nu_a.average_precision, 0.0082);
  const auto nu_n = find("NU_Team", kNeed);
  EXPECT_EQ(nu_n.precision_at_100, 0.0000);
  EXPECT_EQ(nu_n.recall_at_1000, 0.0375);
  EXPECT_EQ(nu_n.average_precision, 0.0011);
  // 6.81% is the mean of the two published APs.
  EXPECT_EQ(std::round(reference_map("DIA_LAB_NITK") * 1e4) / 1e4, 0.0681);
  EXPECT_THROW(reference_map("nobody"), UsageError);
}

TEST(ReportTest, SymmetricFixtureAndMap) {
  QrelSet q;
  for (const Category c : kCategories) {
    q.add("a", c, 1);
    q.add("c", c, 1);
  }
  const std::vector<std::string> ranked = {"a", "b", "c"};
  const EvalReport r = build_report(ranked, ranked, q);
  EXPECT_EQ(r.need.precision_at_100, r.availability.precision_at_100);
  EXPECT_EQ(r.need.recall_at_1000, r.availability.recall_at_1000);
  EXPECT_EQ(r.need.average_precision, r.availability.average_precision);
  EXPECT_EQ(r.map, r.need.average_precision);
  EXPECT_EQ(r.references.size(), 4u);
  EXPECT_THROW(build_report({}, ranked, q), DataError);
  EXPECT_THROW(build_report(ranked, ranked, qrels_of({"a"}, kNeed)), DataError);
}

TEST(ReportTest, TextAndJsonAgree) {
  QrelSet q;
  q.add("a", kNeed, 1);
  q.add("x", kNeed, 1);
  q.add("b", Category::kAvailability, 1);
  const std::vector<std::string> need = {"a", "b", "c"}, avail = {"c", "b"};
  const EvalReport r = build_report(need, avail, q);
  std::ostringstream text, json;
  write_report_text(text, r);
  write_report_json(json, r);
  const auto j = nlohmann::json::parse(json.str());
  const auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  for (const char* cat : {"need", "availability"}) {
    for (const char* metric : {"precision_at_100", "recall_at_1000", "average_precision"}) {
      const double v = j["run"][cat][metric].get<double>();
      EXPECT_NE(text.str().find(fmt(v)), std::string::npos) << cat << " " << metric;
    }
  }
  EXPECT_EQ(j["run"]["map"].get<double>(), r.map);
  EXPECT_NE(text.str().find(fmt(r.map)), std::string::npos);
  EXPECT_EQ(j["reference"].size(), 4u);
  for (const auto& row : j["reference"]) {
    EXPECT_NE(text.str().find(row["system"].get<std::string>() + " [published]"), std::string::npos);
    EXPECT_NE(text.str().find(fmt(row["metrics"]["average_precision"].get<double>())),
              std::string::npos);
  }
  EXPECT_NE(text.str().find("0.0681 = mean(0.1096, 0.0266)"), std::string::npos);
}

}  // namespace
}  // namespace cir
