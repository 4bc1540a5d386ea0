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

// Paragraph vectors, distributed bag-of-words variant: every document owns a
// 100-dim vector trained to predict its own tokens against negative samples
// drawn from the unigram^0.75 distribution. Word output vectors are shared.

#ifndef CIR_EMBEDDING_HPP_
#define CIR_EMBEDDING_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cir/common.hpp"
#include "cir/model_io.hpp"
#include "cir/random.hpp"

namespace cir {

struct PreprocessedTweet;

inline constexpr std::size_t kEmbeddingDim = 100;
inline constexpr std::size_t kStatDims = 5;
inline constexpr std::size_t kFeatureDim = kEmbeddingDim + kStatDims;

using TokenList = std::vector<std::string>;

class Vocabulary {
 public:
  /// Index of `word`, or -1.
  int index_of(const std::string& word) const;
  std::size_t size() const { return words_.size(); }
  const std::string& word(std::size_t i) const { return words_[i]; }
  std::int64_t frequency(std::size_t i) const { return freqs_[i]; }
  int min_count() const { return min_count_; }

  /// Appends a word; indices are assigned densely in insertion order.
  void add(std::string word, std::int64_t frequency);
  void set_min_count(int m) { min_count_ = m; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_ && a.freqs_ == b.freqs_ && a.min_count_ == b.min_count_;
  }

 private:
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> words_;
  std::vector<std::int64_t> freqs_;
  int min_count_ = 1;
};

/// Words with frequency >= min_count, ordered by descending frequency then
/// lexicographically. Throws DataError when nothing survives, UsageError
/// when min_count < 1.
Vocabulary build_vocab(std::span<const TokenList> docs, int min_count);
Vocabulary build_vocab(std::span<const PreprocessedTweet> docs, int min_count);

/// Row-major float matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0f) {}

  std::span<float> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const float> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct EmbeddingHyper {
  std::size_t dim = kEmbeddingDim;
  int negative = 5;
  int epochs = 20;
  double learning_rate = 0.025;
  double subsample = 0.0;  // 0 disables frequent-word subsampling
  int min_count = 2;
  int infer_steps = 50;

  friend bool operator==(const EmbeddingHyper&, const EmbeddingHyper&) = default;
};

struct EmbeddingModel {
  Vocabulary vocab;
  EmbeddingHyper hyper;
  std::uint64_t seed = 0;
  Matrix word_out;  // V x dim
  Matrix docs;      // D x dim, training documents in input order

  friend bool operator==(const EmbeddingModel&, const EmbeddingModel&) = default;
};

/// Loss and exact gradients of the negative-sampling objective
///   L = -log s(d.p) - sum_i log s(-d.n_i)
/// for one document vector d, positive word vector p and k noise vectors
/// n_i (stored contiguously, k x dim).
template <typename Real>
struct NegSamplingGrad {
  Real loss = 0;
  std::vector<Real> d_doc;
  std::vector<Real> d_pos;
  std::vector<Real> d_neg;  // k x dim
};

template <typename Real>
NegSamplingGrad<Real> loss_and_gradient(std::span<const Real> doc, std::span<const Real> pos,
                                        std::span<const Real> neg);

/// Numerically stable log(sigmoid(x)).
double log_sigmoid(double x);
double sigmoid(double x);

/// Linearly decaying learning rate: lr0 at step 0 falling to 0.1 * lr0 at
/// step `total`.
double learning_rate_at(std::uint64_t step, std::uint64_t total, double lr0);

/// Draws word indices with probability proportional to frequency^0.75.
class NoiseSampler {
 public:
  explicit NoiseSampler(const Vocabulary& vocab);
  std::size_t sample(Rng& rng) const;
  double probability(std::size_t word) const;

 private:
  std::vector<double> cumulative_;
};

/// Deterministic single-threaded training (the reference path).
/// Throws DataError when the loss becomes non-finite.
EmbeddingModel train_embeddings_serial(std::span<const TokenList> docs, const Vocabulary& vocab,
                                       const EmbeddingHyper& hyper, std::uint64_t seed);

/// OpenMP training with unsynchronized (Hogwild) updates of shared word
/// vectors. Each document draws from its own seeded stream, so threads == 1
/// reproduces the serial path bit for bit; more threads give no determinism
/// guarantee.
EmbeddingModel train_embeddings(std::span<const TokenList> docs, const Vocabulary& vocab,
                                const EmbeddingHyper& hyper, std::uint64_t seed,
                                int threads = 1);

/// Vector for an unseen token list. Word vectors stay frozen. Returns zeros
/// when no token is in the vocabulary.
std::vector<float> infer_doc_vector(const EmbeddingModel& model, const TokenList& tokens,
                                    int steps, std::uint64_t seed);

/// Serial reference: document i uses derive_seed(seed, i).
Matrix infer_batch_serial(const EmbeddingModel& model, std::span<const TokenList> docs,
                          int steps, std::uint64_t seed);
/// OpenMP kernel; identical output to the serial reference.
Matrix infer_batch(const EmbeddingModel& model, std::span<const TokenList> docs, int steps,
                   std::uint64_t seed, int threads = 0);

using FeatureVector = std::array<double, kFeatureDim>;

/// Embedding dims 0..99, then question, link, hash, mention, number.
FeatureVector compose_feature(std::span<const float> doc_vec, const StatCounts& stats);
std::array<double, kEmbeddingDim> embedding_part(const FeatureVector& f);
StatCounts stats_part(const FeatureVector& f);

double cosine(std::span<const float> a, std::span<const float> b);

std::vector<std::uint8_t> serialize(const EmbeddingModel& model);
EmbeddingModel deserialize_embedding(std::span<const std::uint8_t> payload);

}  // namespace cir

#endif  // CIR_EMBEDDING_HPP_
