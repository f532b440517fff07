#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "newsforge/corpus.hpp"

namespace newsforge {

inline constexpr double kMinValence = -2.0;
inline constexpr double kMaxValence = 2.0;

/// Word -> valence table on the -2..+2 scale. Keys are stored stemmed so they
/// match Sentence tokens directly.
class SentimentLexicon {
 public:
  /// Parses `word<TAB>valence` lines; `#` starts a comment. Words that stem
  /// to the same key are averaged. Throws Error(Parse) on malformed lines or
  /// out-of-range valences and Error(EmptyInput) if no entry is read.
  static SentimentLexicon parse(std::istream& in);
  static SentimentLexicon load_file(const std::string& path);
  /// The lexicon compiled into the library.
  static const SentimentLexicon& bundled();

  /// Builds directly from stemmed keys; same validation as parse.
  static SentimentLexicon from_entries(std::unordered_map<std::string, double> entries);

  const double* find(std::string_view token) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::unordered_map<std::string, double>& entries() const noexcept { return entries_; }

 private:
  std::unordered_map<std::string, double> entries_;
};

/// not, no, never, and any token ending in n't.
bool is_negator(std::string_view token) noexcept;

/// Maps a cleaned sentence to a score in [-2, +2].
class SentenceScorer {
 public:
  virtual ~SentenceScorer() = default;
  virtual double score(const Sentence& sentence) const = 0;
};

/// Mean valence of lexicon hits; a hit's sign flips when a negator appears in
/// the three preceding tokens. No hits scores 0.
double score_sentence(const Sentence& sentence, const SentimentLexicon& lexicon);

class LexiconScorer final : public SentenceScorer {
 public:
  explicit LexiconScorer(const SentimentLexicon& lexicon) : lexicon_(&lexicon) {}
  double score(const Sentence& sentence) const override {
    return score_sentence(sentence, *lexicon_);
  }

 private:
  const SentimentLexicon* lexicon_;
};

struct ScoreSeries {
  std::string document_id;
  std::vector<double> values;
};

ScoreSeries score_document(const NewsDocument& doc, const SentenceScorer& scorer);

enum class FusionMethod { Mean, Correntropy };

std::string_view to_string(FusionMethod m) noexcept;

struct FusionConfig {
  double eta = 1.0;  // kernel bandwidth
  double tolerance = 1e-9;
  int max_iterations = 100;

  void validate() const;
};

struct FusionResult {
  double value = 0.0;
  std::vector<double> weights;  // same order as the input series
  int iterations = 0;
  bool converged = true;
  FusionMethod method = FusionMethod::Mean;
};

/// Arithmetic mean. Throws Error(EmptyDocument) for an empty series.
FusionResult fuse_mean(std::span<const double> values);
FusionResult fuse_mean(const ScoreSeries& series);

/// Correntropy-weighted mean by fixed-point iteration started from the
/// arithmetic mean: w_i = exp(-eta (x_i - mu)^2), mu <- sum(w_i x_i) / sum(w_i),
/// until |delta mu| < tolerance or max_iterations updates. The returned
/// weights are evaluated at the final mu. With eta = 0 the value is
/// bit-identical to fuse_mean.
///
/// Sums are taken over the values in sorted order, so both fusers give
/// bit-identical results for any permutation of the input.
FusionResult fuse_correntropy(std::span<const double> values, const FusionConfig& config);
FusionResult fuse_correntropy(const ScoreSeries& series, const FusionConfig& config);

FusionResult fuse(std::span<const double> values, FusionMethod method, const FusionConfig& config);

/// One fused document, as written by `newsforge fuse`.
struct ScoredDocument {
  std::string id;
  std::string country;
  Category category = Category::Politics;
  double sentiment = 0.0;
  bool converged = true;
  int iterations = 0;
};

struct CorpusFusion {
  std::vector<ScoredDocument> documents;
  /// Documents with no sentence left after cleaning; not scored.
  std::vector<std::string> skipped_ids;
};

/// Scores and fuses every cleaned document. Documents are independent and
/// may be processed in parallel; output keeps input order.
CorpusFusion fuse_corpus(std::span<const NewsDocument> docs, const SentenceScorer& scorer,
                         FusionMethod method, const FusionConfig& config);

}  // namespace newsforge
