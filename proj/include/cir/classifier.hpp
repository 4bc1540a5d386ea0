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

// Feed-forward classifier 105 -> H -> 2 (ReLU hidden layer, softmax output)
// trained with mini-batch momentum SGD on class-weighted cross-entropy.

#ifndef CIR_CLASSIFIER_HPP_
#define CIR_CLASSIFIER_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cir/common.hpp"
#include "cir/embedding.hpp"

namespace cir {

inline constexpr std::size_t kNumClasses = 2;

struct MlpHyper {
  std::size_t hidden = 100;
  int epochs = 300;
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::size_t batch_size = 32;
  bool class_weights = true;      // inverse-frequency loss weights
  bool standardize_stats = true;  // false feeds raw counts into dims 100..104

  friend bool operator==(const MlpHyper&, const MlpHyper&) = default;
};

struct MlpModel {
  MlpHyper hyper;
  std::uint64_t seed = 0;
  // Standardization of the stat dims; identity when disabled.
  std::array<double, kStatDims> stat_mean{};
  std::array<double, kStatDims> stat_scale{1, 1, 1, 1, 1};
  std::vector<double> w1;  // kFeatureDim x hidden, input-major
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // hidden x 2
  std::vector<double> b2;  // 2

  std::size_t hidden() const { return b1.size(); }

  friend bool operator==(const MlpModel&, const MlpModel&) = default;
};

struct ClassScores {
  double p_need = 0.5;
  double p_availability = 0.5;

  double operator[](Category c) const {
    return c == Category::kNeed ? p_need : p_availability;
  }
  /// Ties go to Availability, the majority class.
  Category argmax() const {
    return p_availability >= p_need ? Category::kAvailability : Category::kNeed;
  }
};

/// He-initialized network (weights N(0, 2/fan_in), zero biases).
MlpModel init_mlp(const MlpHyper& hyper, std::uint64_t seed);

/// Throws UsageError when `feature` does not have 105 entries.
ClassScores predict(const MlpModel& model, std::span<const double> feature);

std::vector<ClassScores> predict_batch_serial(const MlpModel& model,
                                              std::span<const FeatureVector> features);
std::vector<ClassScores> predict_batch(const MlpModel& model,
                                       std::span<const FeatureVector> features, int threads = 0);

struct MlpGradients {
  double loss = 0;  // weighted mean cross-entropy
  std::vector<double> w1, b1, w2, b2;
};

using ClassWeights = std::array<double, kNumClasses>;

/// Weighted mean cross-entropy over the batch (weights indexed by class).
double mlp_loss(const MlpModel& model, std::span<const FeatureVector> x,
                std::span<const Category> y, const ClassWeights& weights = {1, 1});

/// Exact gradients of mlp_loss with respect to every parameter.
MlpGradients backward(const MlpModel& model, std::span<const FeatureVector> x,
                      std::span<const Category> y, const ClassWeights& weights = {1, 1});

/// w_c = N / (2 n_c).
ClassWeights inverse_frequency_weights(std::span<const Category> y);

/// Trains for exactly hyper.epochs passes. Examples are put in a canonical
/// order before the seeded per-epoch shuffles, so the input order does not
/// matter. `loss_history`, when given, receives the mean loss of each epoch.
/// Throws UsageError on fewer than 2 examples or a single class, DataError on
/// a non-finite loss.
MlpModel train_mlp(std::span<const FeatureVector> x, std::span<const Category> y,
                   const MlpHyper& hyper, std::uint64_t seed,
                   std::vector<double>* loss_history = nullptr);

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct FoldMetrics {
  ClassMetrics need;
  ClassMetrics availability;
  double accuracy = 0;
  double baseline_accuracy = 0;  // majority class of the training folds
  std::size_t test_size = 0;

  const ClassMetrics& operator[](Category c) const {
    return c == Category::kNeed ? need : availability;
  }
};

FoldMetrics evaluate_predictions(std::span<const Category> truth,
                                 std::span<const Category> predicted);

/// Accuracy of always predicting the majority class of `train` on `test`.
/// Ties go to Need.
double majority_baseline(std::span<const Category> train, std::span<const Category> test);

/// Stratified fold index for each example: each class is shuffled with the
/// seed and dealt round-robin, continuing where the previous class stopped.
std::vector<int> stratified_folds(std::span<const Category> y, int k, std::uint64_t seed);

struct CvReport {
  std::vector<FoldMetrics> folds;
  FoldMetrics mean;
};

/// k-fold cross-validation; fold f trains with seed derive_seed(seed, f).
/// Throws UsageError for k < 2 or when a class has fewer than k examples.
CvReport kfold_cv_serial(std::span<const FeatureVector> x, std::span<const Category> y, int k,
                         const MlpHyper& hyper, std::uint64_t seed);
/// Folds trained concurrently; identical to the serial reference.
CvReport kfold_cv(std::span<const FeatureVector> x, std::span<const Category> y, int k,
                  const MlpHyper& hyper, std::uint64_t seed, int threads = 0);

std::vector<std::uint8_t> serialize(const MlpModel& model);
MlpModel deserialize_mlp(std::span<const std::uint8_t> payload);

}  // namespace cir

#endif  // CIR_CLASSIFIER_HPP_
