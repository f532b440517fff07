#include "newsforge/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "newsforge/corpus.hpp"
#include "newsforge/error.hpp"

namespace newsforge {

bool SparseVector::is_zero() const noexcept {
  return std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; });
}

double SparseVector::norm() const noexcept { return std::sqrt(dot(*this, *this)); }

double SparseVector::weight_at(std::uint32_t index) const noexcept {
  const auto it = std::lower_bound(indices.begin(), indices.end(), index);
  if (it == indices.end() || *it != index) return 0.0;
  return weights[static_cast<std::size_t>(it - indices.begin())];
}

SparseVector SparseVector::scaled(double factor) const {
  SparseVector out = *this;
  for (double& w : out.weights) w *= factor;
  return out;
}

double dot(const SparseVector& a, const SparseVector& b) noexcept {
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.indices.size() && j < b.indices.size()) {
    if (a.indices[i] == b.indices[j]) {
      sum += a.weights[i] * b.weights[j];
      ++i;
      ++j;
    } else if (a.indices[i] < b.indices[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

double cosine_distance(const SparseVector& a, const SparseVector& b) noexcept {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  return std::clamp(1.0 - dot(a, b) / (na * nb), 0.0, 2.0);
}

Vocabulary::Vocabulary(std::unordered_map<std::string, std::size_t> document_frequency,
                       std::size_t corpus_size)
    : corpus_size_(corpus_size) {
  std::map<std::string, std::size_t> ordered(document_frequency.begin(), document_frequency.end());
  terms_.reserve(ordered.size());
  df_.reserve(ordered.size());
  for (auto& [term, df] : ordered) {
    if (df < 1 || df > corpus_size)
      throw Error(ErrorCode::InvalidArgument, "document frequency of '" + term + "' out of range");
    index_.emplace(term, static_cast<std::uint32_t>(terms_.size()));
    terms_.push_back(term);
    df_.push_back(df);
  }
}

std::int64_t Vocabulary::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::size_t Vocabulary::document_frequency(std::string_view term) const {
  const std::int64_t idx = index_of(term);
  return idx < 0 ? 0 : df_[static_cast<std::size_t>(idx)];
}

std::unordered_set<std::string> normalized_english_stopwords() {
  std::unordered_set<std::string> out;
  for (const std::string& w : english_stopwords()) out.insert(normalize_token(w));
  return out;
}

TfIdfModel::TfIdfModel(Vocabulary vocabulary, TfIdfOptions options)
    : vocab_(std::move(vocabulary)), options_(std::move(options)) {}

double TfIdfModel::idf(std::string_view term) const {
  const std::size_t df = vocab_.document_frequency(term);
  if (df == 0) return 0.0;
  return std::log(static_cast<double>(vocab_.corpus_size()) / static_cast<double>(df));
}

SparseVector TfIdfModel::vectorize(std::span<const std::string> document) const {
  std::map<std::uint32_t, std::size_t> counts;
  std::size_t length = 0;
  for (const std::string& tok : document) {
    if (options_.stopwords.contains(tok)) continue;
    ++length;
    const std::int64_t idx = vocab_.index_of(tok);
    if (idx >= 0) ++counts[static_cast<std::uint32_t>(idx)];
  }

  SparseVector v;
  for (const auto& [idx, count] : counts) {
    const double tf = static_cast<double>(count) / static_cast<double>(length);
    const double idf = std::log(static_cast<double>(vocab_.corpus_size()) /
                                static_cast<double>(vocab_.document_frequency(idx)));
    const double w = tf * idf;
    if (w == 0.0) continue;
    v.indices.push_back(idx);
    v.weights.push_back(w);
  }
  if (options_.l2_normalize) {
    const double n = v.norm();
    if (n > 0.0)
      for (double& w : v.weights) w /= n;
  }
  return v;
}

TfIdfModel build_model(std::span<const std::vector<std::string>> titles, TfIdfOptions options) {
  if (options.min_df < 1) throw Error(ErrorCode::InvalidArgument, "min_df must be >= 1");
  std::unordered_map<std::string, std::size_t> df;
  bool any_token = false;
  for (const auto& title : titles) {
    std::unordered_set<std::string> seen;
    for (const std::string& tok : title) {
      if (tok.empty() || options.stopwords.contains(tok)) continue;
      any_token = true;
      if (seen.insert(tok).second) ++df[tok];
    }
  }
  if (!any_token) throw Error(ErrorCode::EmptyCorpus, "no titles with usable tokens");

  std::erase_if(df, [&](const auto& kv) { return kv.second < options.min_df; });
  Vocabulary vocab(std::move(df), titles.size());
  return TfIdfModel(std::move(vocab), std::move(options));
}

double term_frequency(std::string_view term, std::span<const std::string> document) {
  if (document.empty()) return 0.0;
  const auto count = std::count(document.begin(), document.end(), term);
  return static_cast<double>(count) / static_cast<double>(document.size());
}

}  // namespace newsforge
