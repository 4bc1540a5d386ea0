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

#include "cir/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cir/model_io.hpp"
#include "cir/random.hpp"
#include "omp_util.hpp"

namespace cir {
namespace {

constexpr std::uint64_t kInitStream = 0x1417;
constexpr std::uint64_t kShuffleStream = 0xE90C;
constexpr std::uint64_t kFoldStream = 0xF01D;

std::size_t class_index(Category c) { return static_cast<std::size_t>(c); }

// Per-example activations.
struct Forward {
  std::array<double, kFeatureDim> x;
  std::vector<double> pre;  // hidden pre-activation
  std::vector<double> act;
  std::array<double, kNumClasses> logits;
  std::array<double, kNumClasses> prob;
  std::array<double, kNumClasses> log_prob;
};

void standardized_input(const MlpModel& m, std::span<const double> f,
                        std::array<double, kFeatureDim>& x) {
  std::copy_n(f.begin(), kEmbeddingDim, x.begin());
  for (std::size_t s = 0; s < kStatDims; ++s) {
    x[kEmbeddingDim + s] = (f[kEmbeddingDim + s] - m.stat_mean[s]) / m.stat_scale[s];
  }
}

void forward(const MlpModel& m, std::span<const double> feature, Forward& fw) {
  const std::size_t h = m.hidden();
  standardized_input(m, feature, fw.x);
  fw.pre.assign(m.b1.begin(), m.b1.end());
  for (std::size_t i = 0; i < kFeatureDim; ++i) {
    const double xi = fw.x[i];
    if (xi == 0.0) continue;
    const double* w = m.w1.data() + i * h;
    for (std::size_t j = 0; j < h; ++j) fw.pre[j] += xi * w[j];
  }
  fw.act.resize(h);
  for (std::size_t j = 0; j < h; ++j) fw.act[j] = fw.pre[j] > 0.0 ? fw.pre[j] : 0.0;
  for (std::size_t c = 0; c < kNumClasses; ++c) fw.logits[c] = m.b2[c];
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      fw.logits[c] += fw.act[j] * m.w2[j * kNumClasses + c];
    }
  }
  const double top = std::max(fw.logits[0], fw.logits[1]);
  double z = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) z += std::exp(fw.logits[c] - top);
  const double lse = top + std::log(z);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    fw.log_prob[c] = fw.logits[c] - lse;
    fw.prob[c] = std::exp(fw.log_prob[c]);
  }
}

void zero_like(const MlpModel& m, MlpGradients& g) {
  g.loss = 0;
  g.w1.assign(m.w1.size(), 0.0);
  g.b1.assign(m.b1.size(), 0.0);
  g.w2.assign(m.w2.size(), 0.0);
  g.b2.assign(m.b2.size(), 0.0);
}

// Adds the gradient of the batch's weighted mean loss over `idx` into g.
void accumulate(const MlpModel& m, std::span<const FeatureVector> x, std::span<const Category> y,
                std::span<const std::size_t> idx, const ClassWeights& weights, Forward& fw,
                std::vector<double>& d_pre, MlpGradients& g) {
  const std::size_t h = m.hidden();
  const double inv_b = 1.0 / static_cast<double>(idx.size());
  d_pre.resize(h);
  for (const std::size_t n : idx) {
    forward(m, x[n], fw);
    const std::size_t label = class_index(y[n]);
    const double w = weights[label] * inv_b;
    g.loss -= w * fw.log_prob[label];
    std::array<double, kNumClasses> d_logit;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      d_logit[c] = w * (fw.prob[c] - (c == label ? 1.0 : 0.0));
      g.b2[c] += d_logit[c];
    }
    for (std::size_t j = 0; j < h; ++j) {
      double da = 0;
      for (std::size_t c = 0; c < kNumClasses; ++c) {
        g.w2[j * kNumClasses + c] += fw.act[j] * d_logit[c];
        da += m.w2[j * kNumClasses + c] * d_logit[c];
      }
      d_pre[j] = fw.pre[j] > 0.0 ? da : 0.0;
      g.b1[j] += d_pre[j];
    }
    for (std::size_t i = 0; i < kFeatureDim; ++i) {
      const double xi = fw.x[i];
      if (xi == 0.0) continue;
      double* gw = g.w1.data() + i * h;
      for (std::size_t j = 0; j < h; ++j) gw[j] += xi * d_pre[j];
    }
  }
}

void check_batch(std::span<const FeatureVector> x, std::span<const Category> y) {
  if (x.size() != y.size()) throw UsageError("features and labels differ in length");
}

void momentum_step(std::vector<double>& theta, std::vector<double>& v,
                   const std::vector<double>& g, double lr, double mu) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    v[i] = mu * v[i] - lr * g[i];
    theta[i] += v[i];
  }
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
  ClassMetrics m;
  m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  const double s = m.precision + m.recall;
  m.f1 = s > 0 ? 2 * m.precision * m.recall / s : 0.0;
  return m;
}

FoldMetrics run_fold(std::span<const FeatureVector> x, std::span<const Category> y,
                     const std::vector<int>& fold_of, int f, const MlpHyper& hyper,
                     std::uint64_t seed) {
  std::vector<FeatureVector> train_x, test_x;
  std::vector<Category> train_y, test_y;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (fold_of[i] == f) {
      test_x.push_back(x[i]);
      test_y.push_back(y[i]);
    } else {
      train_x.push_back(x[i]);
      train_y.push_back(y[i]);
    }
  }
  const MlpModel model =
      train_mlp(train_x, train_y, hyper, derive_seed(seed, kFoldStream, static_cast<std::uint64_t>(f)));
  std::vector<Category> predicted;
  predicted.reserve(test_x.size());
  for (const auto& fv : test_x) predicted.push_back(predict(model, fv).argmax());
  FoldMetrics m = evaluate_predictions(test_y, predicted);
  m.baseline_accuracy = majority_baseline(train_y, test_y);
  return m;
}

void check_cv(std::span<const FeatureVector> x, std::span<const Category> y, int k) {
  check_batch(x, y);
  if (k < 2) throw UsageError("k must be >= 2");
  for (const Category c : kCategories) {
    const auto n = std::count(y.begin(), y.end(), c);
    if (n < k) {
      throw UsageError("class " + std::string(to_string(c)) + " has " + std::to_string(n) +
                       " examples, fewer than k=" + std::to_string(k));
    }
  }
}

CvReport summarize(std::vector<FoldMetrics> folds) {
  CvReport r;
  const double inv = 1.0 / static_cast<double>(folds.size());
  for (const FoldMetrics& f : folds) {
    for (const Category c : kCategories) {
      ClassMetrics& acc = c == Category::kNeed ? r.mean.need : r.mean.availability;
      acc.precision += f[c].precision * inv;
      acc.recall += f[c].recall * inv;
      acc.f1 += f[c].f1 * inv;
    }
    r.mean.accuracy += f.accuracy * inv;
    r.mean.baseline_accuracy += f.baseline_accuracy * inv;
    r.mean.test_size += f.test_size;
  }
  r.folds = std::move(folds);
  return r;
}

}  // namespace

MlpModel init_mlp(const MlpHyper& hyper, std::uint64_t seed) {
  if (hyper.hidden == 0) throw UsageError("hidden layer must have at least one unit");
  MlpModel m;
  m.hyper = hyper;
  m.seed = seed;
  const std::size_t h = hyper.hidden;
  m.w1.resize(kFeatureDim * h);
  m.b1.assign(h, 0.0);
  m.w2.resize(h * kNumClasses);
  m.b2.assign(kNumClasses, 0.0);
  Rng rng(derive_seed(seed, kInitStream));
  const double s1 = std::sqrt(2.0 / static_cast<double>(kFeatureDim));
  for (double& w : m.w1) w = s1 * rng.normal();
  const double s2 = std::sqrt(2.0 / static_cast<double>(h));
  for (double& w : m.w2) w = s2 * rng.normal();
  return m;
}

ClassScores predict(const MlpModel& model, std::span<const double> feature) {
  if (feature.size() != kFeatureDim) {
    throw UsageError("feature vector must have " + std::to_string(kFeatureDim) + " entries, got " +
                     std::to_string(feature.size()));
  }
  Forward fw;
  forward(model, feature, fw);
  return {fw.prob[class_index(Category::kNeed)], fw.prob[class_index(Category::kAvailability)]};
}

std::vector<ClassScores> predict_batch_serial(const MlpModel& model,
                                              std::span<const FeatureVector> features) {
  std::vector<ClassScores> out;
  out.reserve(features.size());
  for (const auto& f : features) out.push_back(predict(model, f));
  return out;
}

std::vector<ClassScores> predict_batch(const MlpModel& model,
                                       std::span<const FeatureVector> features, int threads) {
  std::vector<ClassScores> out(features.size());
  const auto n = static_cast<std::int64_t>(features.size());
#pragma omp parallel for schedule(static) num_threads(detail::resolve_threads(threads))
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = predict(model, features[static_cast<std::size_t>(i)]);
  }
  return out;
}

double mlp_loss(const MlpModel& model, std::span<const FeatureVector> x,
                std::span<const Category> y, const ClassWeights& weights) {
  check_batch(x, y);
  if (x.empty()) return 0.0;
  Forward fw;
  double loss = 0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    forward(model, x[n], fw);
    loss -= weights[class_index(y[n])] * fw.log_prob[class_index(y[n])];
  }
  return loss / static_cast<double>(x.size());
}

MlpGradients backward(const MlpModel& model, std::span<const FeatureVector> x,
                      std::span<const Category> y, const ClassWeights& weights) {
  check_batch(x, y);
  MlpGradients g;
  zero_like(model, g);
  if (x.empty()) return g;
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  Forward fw;
  std::vector<double> d_pre;
  accumulate(model, x, y, idx, weights, fw, d_pre, g);
  return g;
}

ClassWeights inverse_frequency_weights(std::span<const Category> y) {
  ClassWeights w{1, 1};
  const auto n = static_cast<double>(y.size());
  for (const Category c : kCategories) {
    const auto nc = static_cast<double>(std::count(y.begin(), y.end(), c));
    w[class_index(c)] = nc > 0 ? n / (kNumClasses * nc) : 1.0;
  }
  return w;
}

MlpModel train_mlp(std::span<const FeatureVector> x, std::span<const Category> y,
                   const MlpHyper& hyper, std::uint64_t seed, std::vector<double>* loss_history) {
  check_batch(x, y);
  if (x.size() < 2) throw UsageError("training needs at least 2 examples");
  if (std::count(y.begin(), y.end(), y.front()) == static_cast<std::ptrdiff_t>(y.size())) {
    throw UsageError("training data contains a single class");
  }
  if (hyper.batch_size == 0 || hyper.epochs < 0 || !(hyper.learning_rate > 0.0)) {
    throw UsageError("invalid classifier hyperparameters");
  }

  // Canonical example order.
  std::vector<std::size_t> canon(x.size());
  std::iota(canon.begin(), canon.end(), 0);
  std::stable_sort(canon.begin(), canon.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  MlpModel m = init_mlp(hyper, seed);
  if (hyper.standardize_stats) {
    const auto n = static_cast<double>(x.size());
    for (std::size_t s = 0; s < kStatDims; ++s) {
      double sum = 0;
      for (const std::size_t i : canon) sum += x[i][kEmbeddingDim + s];
      const double mean = sum / n;
      double var = 0;
      for (const std::size_t i : canon) {
        const double d = x[i][kEmbeddingDim + s] - mean;
        var += d * d;
      }
      const double sd = std::sqrt(var / n);
      m.stat_mean[s] = mean;
      m.stat_scale[s] = sd > 0 ? sd : 1.0;
    }
  }
  const ClassWeights weights =
      hyper.class_weights ? inverse_frequency_weights(y) : ClassWeights{1, 1};

  MlpGradients g, v;
  zero_like(m, v);
  Forward fw;
  std::vector<double> d_pre;
  std::vector<std::size_t> order = canon;
  if (loss_history != nullptr) loss_history->clear();
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    order = canon;
    Rng rng(derive_seed(seed, kShuffleStream, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(order.begin(), order.end());
    double epoch_loss = 0;
    for (std::size_t start = 0; start < order.size(); start += hyper.batch_size) {
      const std::size_t end = std::min(order.size(), start + hyper.batch_size);
      const std::span<const std::size_t> batch(order.data() + start, end - start);
      zero_like(m, g);
      accumulate(m, x, y, batch, weights, fw, d_pre, g);
      if (!std::isfinite(g.loss)) {
        throw DataError("classifier training diverged (non-finite loss in epoch " +
                        std::to_string(epoch) + ")");
      }
      epoch_loss += g.loss * static_cast<double>(batch.size());
      momentum_step(m.w1, v.w1, g.w1, hyper.learning_rate, hyper.momentum);
      momentum_step(m.b1, v.b1, g.b1, hyper.learning_rate, hyper.momentum);
      momentum_step(m.w2, v.w2, g.w2, hyper.learning_rate, hyper.momentum);
      momentum_step(m.b2, v.b2, g.b2, hyper.learning_rate, hyper.momentum);
    }
    if (loss_history != nullptr) {
      loss_history->push_back(epoch_loss / static_cast<double>(order.size()));
    }
  }
  if (!all_finite(m.w1) || !all_finite(m.w2) || !all_finite(m.b1) || !all_finite(m.b2)) {
    throw DataError("classifier training produced non-finite parameters");
  }
  return m;
}

FoldMetrics evaluate_predictions(std::span<const Category> truth,
                                 std::span<const Category> predicted) {
  if (truth.size() != predicted.size()) throw UsageError("prediction count mismatch");
  FoldMetrics m;
  m.test_size = truth.size();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) correct += truth[i] == predicted[i];
  m.accuracy = truth.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(truth.size());
  for (const Category c : kCategories) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      tp += truth[i] == c && predicted[i] == c;
      fp += truth[i] != c && predicted[i] == c;
      fn += truth[i] == c && predicted[i] != c;
    }
    (c == Category::kNeed ? m.need : m.availability) = class_metrics(tp, fp, fn);
  }
  return m;
}

double majority_baseline(std::span<const Category> train, std::span<const Category> test) {
  if (test.empty()) return 0.0;
  const auto need = std::count(train.begin(), train.end(), Category::kNeed);
  const auto avail = static_cast<std::ptrdiff_t>(train.size()) - need;
  const Category majority = avail > need ? Category::kAvailability : Category::kNeed;
  return static_cast<double>(std::count(test.begin(), test.end(), majority)) /
         static_cast<double>(test.size());
}

std::vector<int> stratified_folds(std::span<const Category> y, int k, std::uint64_t seed) {
  if (k < 1) throw UsageError("k must be positive");
  std::vector<int> fold(y.size(), 0);
  int next = 0;
  for (const Category c : kCategories) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == c) members.push_back(i);
    }
    Rng rng(derive_seed(seed, kFoldStream, class_index(c)));
    rng.shuffle(members.begin(), members.end());
    for (const std::size_t i : members) {
      fold[i] = next;
      next = (next + 1) % k;
    }
  }
  return fold;
}

CvReport kfold_cv_serial(std::span<const FeatureVector> x, std::span<const Category> y, int k,
                         const MlpHyper& hyper, std::uint64_t seed) {
  check_cv(x, y, k);
  const std::vector<int> fold_of = stratified_folds(y, k, seed);
  std::vector<FoldMetrics> folds;
  for (int f = 0; f < k; ++f) folds.push_back(run_fold(x, y, fold_of, f, hyper, seed));
  return summarize(std::move(folds));
}

CvReport kfold_cv(std::span<const FeatureVector> x, std::span<const Category> y, int k,
                  const MlpHyper& hyper, std::uint64_t seed, int threads) {
  check_cv(x, y, k);
  const std::vector<int> fold_of = stratified_folds(y, k, seed);
  std::vector<FoldMetrics> folds(static_cast<std::size_t>(k));
#pragma omp parallel for schedule(dynamic, 1) num_threads(detail::resolve_threads(threads))
  for (int f = 0; f < k; ++f) {
    folds[static_cast<std::size_t>(f)] = run_fold(x, y, fold_of, f, hyper, seed);
  }
  return summarize(std::move(folds));
}

std::vector<std::uint8_t> serialize(const MlpModel& m) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(kFeatureDim));
  w.u32(static_cast<std::uint32_t>(m.hidden()));
  w.u32(static_cast<std::uint32_t>(kNumClasses));
  w.u32(static_cast<std::uint32_t>(m.hyper.epochs));
  w.f64(m.hyper.learning_rate);
  w.f64(m.hyper.momentum);
  w.u32(static_cast<std::uint32_t>(m.hyper.batch_size));
  w.u32(m.hyper.class_weights ? 1 : 0);
  w.u32(m.hyper.standardize_stats ? 1 : 0);
  w.u64(m.seed);
  w.f64s(m.stat_mean);
  w.f64s(m.stat_scale);
  w.f64s(m.w1);
  w.f64s(m.b1);
  w.f64s(m.w2);
  w.f64s(m.b2);
  return w.bytes();
}

MlpModel deserialize_mlp(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  if (r.u32() != kFeatureDim) throw DataError("classifier input width is not 105");
  MlpModel m;
  m.hyper.hidden = r.u32();
  if (m.hyper.hidden == 0) throw DataError("classifier hidden width is zero");
  if (r.u32() != kNumClasses) throw DataError("classifier output width is not 2");
  m.hyper.epochs = static_cast<int>(r.u32());
  m.hyper.learning_rate = r.f64();
  m.hyper.momentum = r.f64();
  m.hyper.batch_size = r.u32();
  m.hyper.class_weights = r.u32() != 0;
  m.hyper.standardize_stats = r.u32() != 0;
  m.seed = r.u64();
  r.f64s(m.stat_mean);
  r.f64s(m.stat_scale);
  const std::size_t h = m.hyper.hidden;
  m.w1.resize(kFeatureDim * h);
  m.b1.resize(h);
  m.w2.resize(h * kNumClasses);
  m.b2.resize(kNumClasses);
  r.f64s(m.w1);
  r.f64s(m.b1);
  r.f64s(m.w2);
  r.f64s(m.b2);
  if (!r.done()) throw DataError("trailing bytes in classifier section");
  if (!all_finite(m.w1) || !all_finite(m.w2) || !all_finite(m.b1) || !all_finite(m.b2)) {
    throw DataError("classifier parameters are not finite");
  }
  return m;
}

}  // namespace cir
