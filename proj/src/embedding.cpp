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

#include "cir/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cir/preprocess.hpp"
#include "omp_util.hpp"

namespace cir {
namespace {

// Stream ids for derive_seed.
constexpr std::uint64_t kDocInitStream = 0xD0C5;
constexpr std::uint64_t kWordInitStream = 0x30D5;
constexpr std::uint64_t kTrainStream = 0x7EA1;

template <typename Real>
Real stable_log_sigmoid(Real x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

template <typename Real>
Real stable_sigmoid(Real x) {
  if (x >= 0) return Real(1) / (Real(1) + std::exp(-x));
  const Real e = std::exp(x);
  return e / (Real(1) + e);
}

template <typename Real>
Real dot(const Real* a, const Real* b, std::size_t n) {
  Real s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Writes gradients (overwriting d_doc, d_pos, d_neg) and returns the loss.
// neg_rows[i] points at the i-th noise vector.
template <typename Real>
Real neg_sampling_kernel(const Real* doc, const Real* pos, std::span<const Real* const> neg_rows,
                         std::size_t dim, Real* d_doc, Real* d_pos, Real* d_neg) {
  const Real xp = dot(doc, pos, dim);
  Real loss = -stable_log_sigmoid(xp);
  const Real gp = stable_sigmoid(xp) - Real(1);
  for (std::size_t j = 0; j < dim; ++j) {
    d_doc[j] = gp * pos[j];
    d_pos[j] = gp * doc[j];
  }
  for (std::size_t i = 0; i < neg_rows.size(); ++i) {
    const Real* n = neg_rows[i];
    const Real xn = dot(doc, n, dim);
    loss -= stable_log_sigmoid(-xn);
    const Real gn = stable_sigmoid(xn);
    Real* dn = d_neg + i * dim;
    for (std::size_t j = 0; j < dim; ++j) {
      d_doc[j] += gn * n[j];
      dn[j] = gn * doc[j];
    }
  }
  return loss;
}

struct Scratch {
  std::vector<float> d_doc, d_pos, d_neg;
  std::vector<const float*> neg_rows;
  std::vector<std::size_t> neg_ids;

  Scratch(std::size_t dim, int k)
      : d_doc(dim), d_pos(dim), d_neg(dim * static_cast<std::size_t>(k)) {
    neg_rows.reserve(static_cast<std::size_t>(k));
    neg_ids.reserve(static_cast<std::size_t>(k));
  }
};

std::vector<std::vector<int>> to_ids(std::span<const TokenList> docs, const Vocabulary& vocab) {
  std::vector<std::vector<int>> ids(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const std::string& t : docs[d]) {
      const int i = vocab.index_of(t);
      if (i >= 0) ids[d].push_back(i);
    }
  }
  return ids;
}

std::vector<double> keep_probabilities(const Vocabulary& vocab, double subsample) {
  std::vector<double> keep(vocab.size(), 1.0);
  if (subsample <= 0.0) return keep;
  double total = 0;
  for (std::size_t i = 0; i < vocab.size(); ++i) total += static_cast<double>(vocab.frequency(i));
  const double threshold = subsample * total;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const double f = static_cast<double>(vocab.frequency(i));
    keep[i] = std::min(1.0, (std::sqrt(f / threshold) + 1.0) * threshold / f);
  }
  return keep;
}

void fill_uniform(std::span<float> v, Rng& rng, std::size_t dim) {
  const double half = 0.5 / static_cast<double>(dim);
  for (float& x : v) x = static_cast<float>(rng.uniform(-half, half));
}

// One pass of SGD over a document's tokens. Word vectors are updated only
// when `word_out` is non-null.
double sgd_pass(std::span<float> doc, const std::vector<int>& ids, const Matrix& words,
                Matrix* word_out, const NoiseSampler& noise, const std::vector<double>& keep,
                int negative, double lr, Rng& rng, Scratch& s) {
  const std::size_t dim = doc.size();
  double loss = 0;
  const auto flr = static_cast<float>(lr);
  for (const int w : ids) {
    if (keep[static_cast<std::size_t>(w)] < 1.0 && rng.uniform() >= keep[static_cast<std::size_t>(w)]) {
      continue;
    }
    s.neg_rows.clear();
    s.neg_ids.clear();
    for (int k = 0; k < negative; ++k) {
      const std::size_t n = noise.sample(rng);
      if (n == static_cast<std::size_t>(w)) continue;
      s.neg_ids.push_back(n);
      s.neg_rows.push_back(words.row(n).data());
    }
    const float* pos = words.row(static_cast<std::size_t>(w)).data();
    loss += neg_sampling_kernel<float>(doc.data(), pos, s.neg_rows, dim, s.d_doc.data(),
                                       s.d_pos.data(), s.d_neg.data());
    for (std::size_t j = 0; j < dim; ++j) doc[j] -= flr * s.d_doc[j];
    if (word_out != nullptr) {
      auto p = word_out->row(static_cast<std::size_t>(w));
      for (std::size_t j = 0; j < dim; ++j) p[j] -= flr * s.d_pos[j];
      for (std::size_t i = 0; i < s.neg_ids.size(); ++i) {
        auto n = word_out->row(s.neg_ids[i]);
        const float* dn = s.d_neg.data() + i * dim;
        for (std::size_t j = 0; j < dim; ++j) n[j] -= flr * dn[j];
      }
    }
  }
  return loss;
}

void validate(const EmbeddingHyper& h, const Vocabulary& vocab) {
  if (h.dim != kEmbeddingDim) {
    throw UsageError("embedding dimension must be " + std::to_string(kEmbeddingDim));
  }
  if (h.negative < 0 || h.epochs < 0 || !(h.learning_rate > 0.0)) {
    throw UsageError("invalid embedding hyperparameters");
  }
  if (vocab.size() == 0) throw DataError("empty vocabulary");
}

EmbeddingModel init_model(std::size_t num_docs, const Vocabulary& vocab,
                          const EmbeddingHyper& hyper, std::uint64_t seed) {
  EmbeddingModel m;
  m.vocab = vocab;
  m.hyper = hyper;
  m.seed = seed;
  m.word_out = Matrix(vocab.size(), hyper.dim);
  m.docs = Matrix(num_docs, hyper.dim);
  Rng word_rng(derive_seed(seed, kWordInitStream));
  fill_uniform(m.word_out.data, word_rng, hyper.dim);
  Rng doc_rng(derive_seed(seed, kDocInitStream));
  fill_uniform(m.docs.data, doc_rng, hyper.dim);
  return m;
}

EmbeddingModel train_impl(std::span<const TokenList> docs, const Vocabulary& vocab,
                          const EmbeddingHyper& hyper, std::uint64_t seed, int threads) {
  validate(hyper, vocab);
  EmbeddingModel m = init_model(docs.size(), vocab, hyper, seed);
  const auto ids = to_ids(docs, vocab);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (ids[d].empty()) std::fill(m.docs.row(d).begin(), m.docs.row(d).end(), 0.0f);
  }
  const NoiseSampler noise(vocab);
  const auto keep = keep_probabilities(vocab, hyper.subsample);
  const auto n = static_cast<std::int64_t>(docs.size());
  const std::uint64_t total = static_cast<std::uint64_t>(hyper.epochs) * docs.size();

  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    double loss = 0;
    if (threads == 0) {
      Scratch s(hyper.dim, hyper.negative);
      for (std::int64_t d = 0; d < n; ++d) {
        const auto du = static_cast<std::size_t>(d);
        if (ids[du].empty()) continue;
        Rng rng(derive_seed(seed, kTrainStream + static_cast<std::uint64_t>(epoch), du));
        const double lr = learning_rate_at(static_cast<std::uint64_t>(epoch) * docs.size() + du,
                                           total, hyper.learning_rate);
        loss += sgd_pass(m.docs.row(du), ids[du], m.word_out, &m.word_out, noise, keep,
                         hyper.negative, lr, rng, s);
      }
    } else {
#pragma omp parallel num_threads(detail::resolve_threads(threads)) reduction(+ : loss)
      {
        Scratch s(hyper.dim, hyper.negative);
#pragma omp for schedule(static)
        for (std::int64_t d = 0; d < n; ++d) {
          const auto du = static_cast<std::size_t>(d);
          if (ids[du].empty()) continue;
          Rng rng(derive_seed(seed, kTrainStream + static_cast<std::uint64_t>(epoch), du));
          const double lr = learning_rate_at(
              static_cast<std::uint64_t>(epoch) * docs.size() + du, total, hyper.learning_rate);
          loss += sgd_pass(m.docs.row(du), ids[du], m.word_out, &m.word_out, noise, keep,
                           hyper.negative, lr, rng, s);
        }
      }
    }
    if (!std::isfinite(loss)) {
      throw DataError("embedding training diverged (non-finite loss in epoch " +
                      std::to_string(epoch) + "); lower the learning rate");
    }
  }
  for (float v : m.word_out.data) {
    if (!std::isfinite(v)) throw DataError("embedding training produced non-finite weights");
  }
  return m;
}

}  // namespace

int Vocabulary::index_of(const std::string& word) const {
  const auto it = index_.find(word);
  return it == index_.end() ? -1 : it->second;
}

void Vocabulary::add(std::string word, std::int64_t frequency) {
  index_.emplace(word, static_cast<int>(words_.size()));
  words_.push_back(std::move(word));
  freqs_.push_back(frequency);
}

Vocabulary build_vocab(std::span<const TokenList> docs, int min_count) {
  if (min_count < 1) throw UsageError("min_count must be >= 1");
  std::unordered_map<std::string, std::int64_t> counts;
  for (const TokenList& doc : docs) {
    for (const std::string& t : doc) ++counts[t];
  }
  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto& [w, c] : counts) {
    if (c >= min_count) kept.emplace_back(w, c);
  }
  if (kept.empty()) {
    throw DataError("empty vocabulary: no token occurs at least " + std::to_string(min_count) +
                    " times");
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Vocabulary v;
  v.set_min_count(min_count);
  for (auto& [w, c] : kept) v.add(std::move(w), c);
  return v;
}

Vocabulary build_vocab(std::span<const PreprocessedTweet> docs, int min_count) {
  std::vector<TokenList> lists;
  lists.reserve(docs.size());
  for (const auto& d : docs) lists.push_back(d.tokens);
  return build_vocab(std::span<const TokenList>(lists), min_count);
}

template <typename Real>
NegSamplingGrad<Real> loss_and_gradient(std::span<const Real> doc, std::span<const Real> pos,
                                        std::span<const Real> neg) {
  const std::size_t dim = doc.size();
  if (pos.size() != dim || (dim == 0 ? !neg.empty() : neg.size() % dim != 0)) {
    throw UsageError("loss_and_gradient: shape mismatch");
  }
  const std::size_t k = dim == 0 ? 0 : neg.size() / dim;
  std::vector<const Real*> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = neg.data() + i * dim;
  NegSamplingGrad<Real> g;
  g.d_doc.resize(dim);
  g.d_pos.resize(dim);
  g.d_neg.resize(k * dim);
  g.loss = neg_sampling_kernel<Real>(doc.data(), pos.data(), rows, dim, g.d_doc.data(),
                                     g.d_pos.data(), g.d_neg.data());
  return g;
}

template NegSamplingGrad<float> loss_and_gradient<float>(std::span<const float>,
                                                         std::span<const float>,
                                                         std::span<const float>);
template NegSamplingGrad<double> loss_and_gradient<double>(std::span<const double>,
                                                           std::span<const double>,
                                                           std::span<const double>);

double log_sigmoid(double x) { return stable_log_sigmoid(x); }
double sigmoid(double x) { return stable_sigmoid(x); }

double learning_rate_at(std::uint64_t step, std::uint64_t total, double lr0) {
  if (total == 0) return lr0;
  const double progress = std::min(1.0, static_cast<double>(step) / static_cast<double>(total));
  return lr0 * (1.0 - 0.9 * progress);
}

NoiseSampler::NoiseSampler(const Vocabulary& vocab) : cumulative_(vocab.size()) {
  double acc = 0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    acc += std::pow(static_cast<double>(vocab.frequency(i)), 0.75);
    cumulative_[i] = acc;
  }
}

std::size_t NoiseSampler::sample(Rng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

double NoiseSampler::probability(std::size_t word) const {
  const double prev = word == 0 ? 0.0 : cumulative_[word - 1];
  return (cumulative_[word] - prev) / cumulative_.back();
}

EmbeddingModel train_embeddings_serial(std::span<const TokenList> docs, const Vocabulary& vocab,
                                       const EmbeddingHyper& hyper, std::uint64_t seed) {
  return train_impl(docs, vocab, hyper, seed, 0);
}

EmbeddingModel train_embeddings(std::span<const TokenList> docs, const Vocabulary& vocab,
                                const EmbeddingHyper& hyper, std::uint64_t seed, int threads) {
  return train_impl(docs, vocab, hyper, seed, std::max(threads, 1));
}

std::vector<float> infer_doc_vector(const EmbeddingModel& model, const TokenList& tokens,
                                    int steps, std::uint64_t seed) {
  const std::size_t dim = model.hyper.dim;
  std::vector<int> ids;
  for (const std::string& t : tokens) {
    const int i = model.vocab.index_of(t);
    if (i >= 0) ids.push_back(i);
  }
  std::vector<float> v(dim, 0.0f);
  if (ids.empty()) return v;
  Rng rng(seed);
  fill_uniform(v, rng, dim);
  const NoiseSampler noise(model.vocab);
  const std::vector<double> keep(model.vocab.size(), 1.0);
  Scratch s(dim, model.hyper.negative);
  for (int step = 0; step < steps; ++step) {
    const double lr = learning_rate_at(static_cast<std::uint64_t>(step),
                                       static_cast<std::uint64_t>(steps),
                                       model.hyper.learning_rate);
    sgd_pass(v, ids, model.word_out, nullptr, noise, keep, model.hyper.negative, lr, rng, s);
  }
  return v;
}

Matrix infer_batch_serial(const EmbeddingModel& model, std::span<const TokenList> docs, int steps,
                          std::uint64_t seed) {
  Matrix out(docs.size(), model.hyper.dim);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto v = infer_doc_vector(model, docs[i], steps, derive_seed(seed, i));
    std::copy(v.begin(), v.end(), out.row(i).begin());
  }
  return out;
}

Matrix infer_batch(const EmbeddingModel& model, std::span<const TokenList> docs, int steps,
                   std::uint64_t seed, int threads) {
  Matrix out(docs.size(), model.hyper.dim);
  const auto n = static_cast<std::int64_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(detail::resolve_threads(threads))
  for (std::int64_t i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const auto v = infer_doc_vector(model, docs[iu], steps, derive_seed(seed, iu));
    std::copy(v.begin(), v.end(), out.row(iu).begin());
  }
  return out;
}

FeatureVector compose_feature(std::span<const float> doc_vec, const StatCounts& stats) {
  if (doc_vec.size() != kEmbeddingDim) throw UsageError("doc vector must have 100 dims");
  FeatureVector f{};
  std::copy(doc_vec.begin(), doc_vec.end(), f.begin());
  const auto s = stats.as_array();
  for (std::size_t i = 0; i < kStatDims; ++i) f[kEmbeddingDim + i] = static_cast<double>(s[i]);
  return f;
}

std::array<double, kEmbeddingDim> embedding_part(const FeatureVector& f) {
  std::array<double, kEmbeddingDim> e{};
  std::copy_n(f.begin(), kEmbeddingDim, e.begin());
  return e;
}

StatCounts stats_part(const FeatureVector& f) {
  const auto at = [&](std::size_t i) { return static_cast<std::int64_t>(f[kEmbeddingDim + i]); };
  return {at(0), at(1), at(2), at(3), at(4)};
}

double cosine(std::span<const float> a, std::span<const float> b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<double>(a[i]) * b[i];
    aa += static_cast<double>(a[i]) * a[i];
    bb += static_cast<double>(b[i]) * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

std::vector<std::uint8_t> serialize(const EmbeddingModel& m) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(m.hyper.dim));
  w.u32(static_cast<std::uint32_t>(m.hyper.negative));
  w.u32(static_cast<std::uint32_t>(m.hyper.epochs));
  w.f64(m.hyper.learning_rate);
  w.f64(m.hyper.subsample);
  w.u32(static_cast<std::uint32_t>(m.hyper.min_count));
  w.u32(static_cast<std::uint32_t>(m.hyper.infer_steps));
  w.u64(m.seed);
  w.u32(static_cast<std::uint32_t>(m.vocab.min_count()));
  w.u32(static_cast<std::uint32_t>(m.vocab.size()));
  for (std::size_t i = 0; i < m.vocab.size(); ++i) {
    w.str(m.vocab.word(i));
    w.u64(static_cast<std::uint64_t>(m.vocab.frequency(i)));
  }
  for (const Matrix* mat : {&m.word_out, &m.docs}) {
    w.u32(static_cast<std::uint32_t>(mat->rows));
    w.u32(static_cast<std::uint32_t>(mat->cols));
    w.f32s(mat->data);
  }
  return w.bytes();
}

EmbeddingModel deserialize_embedding(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  EmbeddingModel m;
  m.hyper.dim = r.u32();
  m.hyper.negative = static_cast<int>(r.u32());
  m.hyper.epochs = static_cast<int>(r.u32());
  m.hyper.learning_rate = r.f64();
  m.hyper.subsample = r.f64();
  m.hyper.min_count = static_cast<int>(r.u32());
  m.hyper.infer_steps = static_cast<int>(r.u32());
  m.seed = r.u64();
  m.vocab.set_min_count(static_cast<int>(r.u32()));
  const std::uint32_t v = r.u32();
  for (std::uint32_t i = 0; i < v; ++i) {
    std::string word = r.str();
    const auto freq = static_cast<std::int64_t>(r.u64());
    m.vocab.add(std::move(word), freq);
  }
  for (Matrix* mat : {&m.word_out, &m.docs}) {
    const std::uint32_t rows = r.u32();
    const std::uint32_t cols = r.u32();
    if (cols != m.hyper.dim) throw DataError("embedding matrix width mismatch");
    *mat = Matrix(rows, cols);
    r.f32s(mat->data);
  }
  if (m.word_out.rows != m.vocab.size()) throw DataError("embedding vocabulary size mismatch");
  if (!r.done()) throw DataError("trailing bytes in embedding section");
  return m;
}

}  // namespace cir
