#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "newsforge/corpus.hpp"

namespace newsforge {

/// Sentences of tokens; training windows never cross a sentence boundary.
using TokenCorpus = std::vector<std::vector<std::string>>;

/// Title tokens (as one sentence) followed by body sentences, per document.
TokenCorpus embedding_corpus(std::span<const NewsDocument> docs);

struct TrainConfig {
  std::size_t dimension = 50;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double initial_rate = 0.025;
  double final_rate = 1e-4;
  std::size_t min_count = 5;
  double subsample_threshold = 1e-3;  // 0 disables subsampling
  std::uint64_t seed = 1;

  void validate() const;
};

class EmbedVocab {
 public:
  /// Words ordered by descending count, ties by ascending word.
  static EmbedVocab build(const TokenCorpus& corpus, std::size_t min_count);

  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t total_count() const noexcept { return total_; }
  /// -1 when absent.
  std::int64_t index_of(std::string_view word) const;

  /// Negative-sampling distribution, proportional to count^0.75.
  const std::vector<double>& noise_probabilities() const noexcept { return noise_; }
  /// Inverse-CDF draw for u in [0, 1).
  std::size_t sample_noise(double u) const;

 private:
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> noise_;
  std::vector<double> noise_cdf_;
  std::uint64_t total_ = 0;
};

/// Throws Error(EmptyInput) when no word survives min_count.
EmbedVocab build_embed_vocab(const TokenCorpus& corpus, std::size_t min_count);

struct EmbeddingModel {
  std::vector<std::string> words;
  std::size_t dimension = 0;
  std::vector<float> input;   // words.size() x dimension, row-major
  std::vector<float> output;  // context vectors; empty for a model loaded from disk
  TrainConfig config;

  std::size_t size() const noexcept { return words.size(); }
  std::int64_t index_of(std::string_view word) const;
  std::span<const float> input_vector(std::size_t i) const {
    return {input.data() + i * dimension, dimension};
  }

  /// Text format: `<vocab_size> <dimension>` header, then one line per word
  /// with its input vector. Config and seed go to a `<path>.json` sidecar.
  void save(const std::string& path) const;
  /// Reads the text format; the sidecar is optional.
  static EmbeddingModel load(const std::string& path);
  /// The text body alone, as written by save.
  std::string to_text() const;
};

/// Input vectors uniform in [-0.5/dim, 0.5/dim), output vectors zero.
EmbeddingModel initialize_model(const EmbedVocab& vocab, const TrainConfig& config);

using EpochCallback = std::function<void(std::size_t epoch, const EmbeddingModel&)>;

/// Skip-gram with negative sampling, single-threaded and deterministic for
/// a given seed. `on_epoch` sees the model after each completed epoch.
EmbeddingModel train(const TokenCorpus& corpus, const TrainConfig& config,
                     const EpochCallback& on_epoch = {});

/// log s(u_o . v_c) + sum_j log s(-u_j . v_c)
double sgns_objective(std::span<const double> center, std::span<const double> context,
                      std::span<const std::vector<double>> negatives);

/// One stochastic ascent step on sgns_objective for a single (center,
/// context) pair. All gradients are taken at the pre-step values, so with
/// rate 1 each vector moves by exactly its gradient. Returns the objective
/// before the step.
template <typename T>
double sgns_step(std::span<T> center, std::span<T> context, std::span<const std::span<T>> negatives,
                 T rate);

struct Neighbor {
  std::string word;
  double similarity = 0.0;
};

/// Top-n words by input-vector cosine similarity, query excluded, ties by
/// ascending word. The query is looked up as given, then normalized. Throws Error(UnknownWord) for an out-of-vocabulary query.
std::vector<Neighbor> nearest_words(const EmbeddingModel& model, std::string_view word, std::size_t n);

double cosine_similarity(std::span<const float> a, std::span<const float> b) noexcept;

}  // namespace newsforge
