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

// Writes the bundled synthetic earthquake corpus: labeled tweets (JSONL) and
// graded qrels. Output depends only on --seed and --size.
//
//   cir_synth --tweets data/synthetic_500.jsonl --qrels data/synthetic_500_qrels.tsv

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cir/corpus.hpp"
#include "cir/random.hpp"

namespace {

using Words = std::vector<std::string>;

const Words kNeedResources = {"food", "water", "tents", "medicine", "blankets", "shelter",
                              "doctors", "insulin", "tarpaulin", "rice", "clothes", "milk"};
const Words kNeedVerbs = {"need", "needs", "urgently need", "require", "requires", "lacking",
                          "running out of", "desperately need", "asking for", "short of"};
const Words kNeedTails = {"please help", "no one has come yet", "children are hungry",
                          "people sleeping outside", "send help soon", "situation is critical",
                          "anyone can help", "still waiting"};
const Words kAvailResources = {"food packets", "water bottles", "tents", "medical kits",
                               "blankets", "relief material", "rice bags", "tarpaulins",
                               "clothes", "hygiene kits"};
const Words kAvailVerbs = {"distributed", "delivered", "sent", "donated", "dispatched",
                           "providing", "handed over", "airlifted", "arrived with",
                           "supplied"};
const Words kAvailActors = {"army", "volunteers", "red cross", "rescue team", "ngo",
                            "police", "medical team", "relief team", "government"};
const Words kPlaces = {"kathmandu", "gorkha", "sindhupalchok", "bhaktapur", "lalitpur",
                       "dhading", "nuwakot", "kavre", "rasuwa", "dolakha"};
const Words kNoise = {"nepal", "earthquake", "today", "village", "people", "district",
                      "families", "area", "after", "shaking"};
const Words kHandles = {"@NDRF", "@RedCrossNepal", "@UNICEF", "@PMOIndia", "@MSF", "@nepalarmy"};
const Words kTags = {"#NepalEarthquake", "#NepalQuake", "#relief", "#Nepal", "#help"};
const Words kHindiNeed = {"पानी चाहिए", "खाना नहीं है", "मदद चाहिए"};
const Words kHindiAvail = {"राहत सामग्री भेजी", "खाना बांटा गया"};

constexpr const char* kQrelsHeader =
    "# Copyright 2026 The CIR Authors\n"
    "#\n"
    "# Licensed under the Apache License, Version 2.0 (the \"License\");\n"
    "# you may not use this file except in compliance with the License.\n"
    "# You may obtain a copy of the License at\n"
    "#\n"
    "#     http://www.apache.org/licenses/LICENSE-2.0\n"
    "#\n"
    "# Unless required by applicable law or agreed to in writing, software\n"
    "# distributed under the License is distributed on an \"AS IS\" BASIS,\n"
    "# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.\n"
    "# See the License for the specific language governing permissions and\n"
    "# limitations under the License.\n"
    "\n";

class Builder {
 public:
  explicit Builder(std::uint64_t seed) : rng_(seed) {}

  const std::string& pick(const Words& w) { return w[rng_.below(w.size())]; }
  bool chance(double p) { return rng_.uniform() < p; }
  int count(int lo, int hi) { return lo + static_cast<int>(rng_.below(hi - lo + 1)); }
  std::string link() {
    static const char* kAlphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string s = "https://t.co/";
    for (int i = 0; i < 8; ++i) s += kAlphabet[rng_.below(36)];
    return s;
  }

  // Returns the text and whether it names a concrete resource and place.
  std::pair<std::string, bool> need() {
    std::string t;
    const bool specific = chance(0.75);
    if (chance(0.3)) t += pick(kNoise) + " ";
    t += pick(kNeedVerbs) + " " + pick(kNeedResources);
    if (chance(0.5)) t += " and " + pick(kNeedResources);
    if (specific) t += " in " + pick(kPlaces);
    if (chance(0.6)) t += " for " + std::to_string(count(2, 900)) + " " + pick(kNoise);
    if (chance(0.1)) t += " after the " + std::to_string(count(5, 7)) + "." +
                          std::to_string(count(0, 9)) + " quake";
    if (chance(0.5)) t += " " + pick(kNeedTails);
    if (chance(0.15)) t += " " + pick(kHindiNeed);
    if (chance(0.45)) t += " ?";
    if (chance(0.2)) t += " " + pick(kTags);
    if (chance(0.25)) t += " " + link();
    return {t, specific};
  }

  std::pair<std::string, bool> availability() {
    std::string t;
    const bool specific = chance(0.75);
    if (chance(0.5)) t += pick(kHandles) + " ";
    t += pick(kAvailActors) + " " + pick(kAvailVerbs) + " " + pick(kAvailResources);
    if (specific) t += " to " + pick(kPlaces);
    if (chance(0.3)) t += " " + std::to_string(count(10, 5000)) + " " + pick(kNoise);
    if (chance(0.25)) t += " " + pick(kNoise);
    if (chance(0.1)) t += " " + pick(kHindiAvail);
    if (chance(0.6)) t += " " + pick(kTags);
    if (chance(0.3)) t += " " + pick(kTags);
    if (chance(0.5)) t += " " + link();
    if (chance(0.3)) t += " " + pick(kHandles);
    return {t, specific};
  }

 private:
  cir::Rng rng_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthetic earthquake tweet corpus"};
  std::uint64_t seed = 2015;
  int size = 500;
  double need_fraction = 0.4;
  std::string tweets_path;
  std::string qrels_path;
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--size", size)->capture_default_str()->check(CLI::Range(2, 1000000));
  app.add_option("--need-fraction", need_fraction)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  app.add_option("--tweets", tweets_path)->required();
  app.add_option("--qrels", qrels_path)->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  Builder b(seed);
  std::vector<cir::RawTweet> tweets;
  std::ofstream qrels(qrels_path, std::ios::binary);
  if (!qrels) {
    std::cerr << "cannot write " << qrels_path << "\n";
    return 2;
  }
  qrels << kQrelsHeader << "# id\tcategory\tgrade\n";
  const int n_need = static_cast<int>(size * need_fraction + 0.5);
  std::vector<cir::Category> labels(static_cast<std::size_t>(size), cir::Category::kAvailability);
  std::fill(labels.begin(), labels.begin() + n_need, cir::Category::kNeed);
  cir::Rng order(cir::derive_seed(seed, 1));
  order.shuffle(labels.begin(), labels.end());
  for (int i = 0; i < size; ++i) {
    const cir::Category c = labels[static_cast<std::size_t>(i)];
    auto [text, specific] = c == cir::Category::kNeed ? b.need() : b.availability();
    cir::RawTweet t{"s" + std::to_string(1000 + i), std::move(text), c};
    qrels << t.id << '\t' << cir::to_string(c) << '\t' << (specific ? 1 : 0) << '\n';
    tweets.push_back(std::move(t));
  }
  std::ofstream out(tweets_path, std::ios::binary);
  cir::write_tweets_jsonl(out, tweets);
  out.close();
  qrels.close();
  if (!out || !qrels) {
    std::cerr << "write failed\n";
    return 2;
  }
  return 0;
}
