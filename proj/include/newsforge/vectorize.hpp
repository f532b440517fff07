#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace newsforge {

/// Sparse non-negative term-weight vector; indices strictly increasing.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> weights;

  std::size_t nnz() const noexcept { return indices.size(); }
  bool is_zero() const noexcept;
  double norm() const noexcept;
  /// Weight stored at `index`, 0 when absent.
  double weight_at(std::uint32_t index) const noexcept;
  SparseVector scaled(double factor) const;
};

double dot(const SparseVector& a, const SparseVector& b) noexcept;

/// 1 - cos(a, b), clamped to [0, 2]. Defined as 1 when either side is zero.
double cosine_distance(const SparseVector& a, const SparseVector& b) noexcept;

class Vocabulary {
 public:
  /// Terms are indexed in lexicographic order.
  Vocabulary(std::unordered_map<std::string, std::size_t> document_frequency, std::size_t corpus_size);

  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t corpus_size() const noexcept { return corpus_size_; }
  /// -1 when the term is not in the vocabulary.
  std::int64_t index_of(std::string_view term) const;
  const std::string& term(std::size_t index) const { return terms_.at(index); }
  std::size_t document_frequency(std::size_t index) const { return df_.at(index); }
  std::size_t document_frequency(std::string_view term) const;

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t corpus_size_ = 0;
};

struct TfIdfOptions {
  std::size_t min_df = 1;
  bool l2_normalize = true;
  /// Tokens dropped before counting, compared against normalized tokens.
  std::unordered_set<std::string> stopwords;
};

/// English stopwords passed through the token normalizer, for use as
/// TfIdfOptions::stopwords.
std::unordered_set<std::string> normalized_english_stopwords();

class TfIdfModel {
 public:
  TfIdfModel(Vocabulary vocabulary, TfIdfOptions options);

  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  const TfIdfOptions& options() const noexcept { return options_; }

  /// ln(N / n_t); 0 for terms outside the vocabulary.
  double idf(std::string_view term) const;

  /// tf * idf per in-vocabulary term, with tf counted over the document's
  /// non-stopword tokens. Zero weights are not stored. L2-normalized when
  /// the option is set; zero vectors stay zero.
  SparseVector vectorize(std::span<const std::string> document) const;

 private:
  Vocabulary vocab_;
  TfIdfOptions options_;
};

/// N is the number of titles; a term enters the vocabulary when its
/// document frequency is at least min_df. Throws Error(EmptyCorpus) when
/// every title is empty once stopwords are removed.
TfIdfModel build_model(std::span<const std::vector<std::string>> titles, TfIdfOptions options = {});

/// Count of `term` in `document` divided by the document length; 0 for an
/// empty document.
double term_frequency(std::string_view term, std::span<const std::string> document);

}  // namespace newsforge
