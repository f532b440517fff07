#include "newsforge/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>

#include "newsforge/error.hpp"

namespace newsforge {

// Defined in the generated bundled_lexicon.cpp.
extern const char* const kBundledLexicon;

namespace {

constexpr int kNegationWindow = 3;

void check_valence(double v, const std::string& where) {
  if (!std::isfinite(v) || v < kMinValence || v > kMaxValence)
    throw Error(ErrorCode::Parse, where + ": valence outside [-2, 2]");
}

// Sum in ascending order of value so the result does not depend on input order.
struct SortedSeries {
  std::vector<double> values;
  std::vector<std::size_t> original_index;
};

SortedSeries sort_series(std::span<const double> values) {
  SortedSeries s;
  s.original_index.resize(values.size());
  std::iota(s.original_index.begin(), s.original_index.end(), std::size_t{0});
  std::stable_sort(s.original_index.begin(), s.original_index.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  s.values.reserve(values.size());
  for (std::size_t i : s.original_index) s.values.push_back(values[i]);
  return s;
}

void require_non_empty(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyDocument, "cannot fuse an empty score series");
  for (double v : values)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "score series holds a non-finite value");
}

double sorted_mean(const std::vector<double>& sorted) {
  double sum = 0.0;
  for (double x : sorted) sum += x;
  const double mean = sum / static_cast<double>(sorted.size());
  return std::clamp(mean, sorted.front(), sorted.back());
}

}  // namespace

SentimentLexicon SentimentLexicon::from_entries(std::unordered_map<std::string, double> entries) {
  for (const auto& [word, v] : entries) {
    if (word.empty()) throw Error(ErrorCode::Parse, "lexicon key is empty");
    check_valence(v, "lexicon entry '" + word + "'");
  }
  if (entries.empty()) throw Error(ErrorCode::EmptyInput, "lexicon has no entries");
  SentimentLexicon lex;
  lex.entries_ = std::move(entries);
  return lex;
}

SentimentLexicon SentimentLexicon::parse(std::istream& in) {
  std::unordered_map<std::string, std::pair<double, int>> acc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    const std::string where = "lexicon line " + std::to_string(line_no);
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(ErrorCode::Parse, where + ": expected word<TAB>valence");
    const std::string key = normalize_token(line.substr(0, tab));
    if (key.empty()) throw Error(ErrorCode::Parse, where + ": empty word");

    std::string_view num(line);
    num.remove_prefix(tab + 1);
    while (!num.empty() && (num.front() == ' ' || num.front() == '\t')) num.remove_prefix(1);
    while (!num.empty() && (num.back() == ' ' || num.back() == '\t')) num.remove_suffix(1);
    if (!num.empty() && num.front() == '+') num.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc() || ptr != num.data() + num.size() || num.empty())
      throw Error(ErrorCode::Parse, where + ": invalid valence");
    check_valence(value, where);

    auto& slot = acc[key];
    slot.first += value;
    slot.second += 1;
  }

  std::unordered_map<std::string, double> entries;
  entries.reserve(acc.size());
  for (const auto& [key, sum_count] : acc)
    entries.emplace(key, sum_count.first / sum_count.second);
  return from_entries(std::move(entries));
}

SentimentLexicon SentimentLexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open lexicon '" + path + "'");
  return parse(in);
}

const SentimentLexicon& SentimentLexicon::bundled() {
  static const SentimentLexicon lexicon = [] {
    std::istringstream in(kBundledLexicon);
    return parse(in);
  }();
  return lexicon;
}

const double* SentimentLexicon::find(std::string_view token) const {
  const auto it = entries_.find(std::string(token));
  return it == entries_.end() ? nullptr : &it->second;
}

bool is_negator(std::string_view token) noexcept {
  if (token == "not" || token == "no" || token == "never") return true;
  return token.size() >= 3 && token.substr(token.size() - 3) == "n't";
}

double score_sentence(const Sentence& sentence, const SentimentLexicon& lexicon) {
  const auto& tokens = sentence.tokens;
  double sum = 0.0;
  int hits = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const double* valence = lexicon.find(tokens[i]);
    if (valence == nullptr) continue;
    bool negated = false;
    const std::size_t from = i >= kNegationWindow ? i - kNegationWindow : 0;
    for (std::size_t j = from; j < i; ++j) negated = negated || is_negator(tokens[j]);
    sum += negated ? -*valence : *valence;
    ++hits;
  }
  if (hits == 0) return 0.0;
  return std::clamp(sum / hits, kMinValence, kMaxValence);
}

ScoreSeries score_document(const NewsDocument& doc, const SentenceScorer& scorer) {
  ScoreSeries series;
  series.document_id = doc.id;
  series.values.reserve(doc.sentences.size());
  for (const Sentence& s : doc.sentences) series.values.push_back(scorer.score(s));
  return series;
}

std::string_view to_string(FusionMethod m) noexcept {
  return m == FusionMethod::Mean ? "mean" : "correntropy";
}

void FusionConfig::validate() const {
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw Error(ErrorCode::InvalidArgument, "eta must be a finite value >= 0");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be > 0");
  if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
}

FusionResult fuse_mean(std::span<const double> values) {
  require_non_empty(values);
  FusionResult r;
  r.value = sorted_mean(sort_series(values).values);
  r.weights.assign(values.size(), 1.0);
  r.iterations = 0;
  r.converged = true;
  r.method = FusionMethod::Mean;
  return r;
}

FusionResult fuse_mean(const ScoreSeries& series) { return fuse_mean(series.values); }

FusionResult fuse_correntropy(std::span<const double> values, const FusionConfig& config) {
  require_non_empty(values);
  config.validate();
  const SortedSeries sorted = sort_series(values);
  const std::vector<double>& xs = sorted.values;
  const double lo = xs.front();
  const double hi = xs.back();

  FusionResult r;
  r.method = FusionMethod::Correntropy;
  r.converged = false;
  double mu = sorted_mean(xs);

  std::vector<double> sq(xs.size());
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    // Shifting every exponent by the smallest squared deviation scales all
    // weights by one common factor, which cancels in the ratio and keeps the
    // largest weight at exactly 1.
    double min_sq = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double d = xs[i] - mu;
      sq[i] = d * d;
      min_sq = std::min(min_sq, sq[i]);
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double w = std::exp(-config.eta * (sq[i] - min_sq));
      num += xs[i] * w;
      den += w;
    }
    const double next = std::clamp(num / den, lo, hi);
    const double delta = std::abs(next - mu);
    mu = next;
    r.iterations = iter;
    if (delta < config.tolerance) {
      r.converged = true;
      break;
    }
  }

  r.value = mu;
  r.weights.resize(values.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double d = xs[k] - mu;
    r.weights[sorted.original_index[k]] = std::exp(-config.eta * d * d);
  }
  return r;
}

FusionResult fuse_correntropy(const ScoreSeries& series, const FusionConfig& config) {
  return fuse_correntropy(series.values, config);
}

FusionResult fuse(std::span<const double> values, FusionMethod method, const FusionConfig& config) {
  return method == FusionMethod::Mean ? fuse_mean(values) : fuse_correntropy(values, config);
}

CorpusFusion fuse_corpus(std::span<const NewsDocument> docs, const SentenceScorer& scorer,
                         FusionMethod method, const FusionConfig& config) {
  config.validate();
  CorpusFusion out;
  for (const NewsDocument& doc : docs) {
    const ScoreSeries series = score_document(doc, scorer);
    if (series.values.empty()) {
      out.skipped_ids.push_back(doc.id);
      continue;
    }
    const FusionResult fused = fuse(series.values, method, config);
    out.documents.push_back(
        {doc.id, doc.country, doc.category, fused.value, fused.converged, fused.iterations});
  }
  return out;
}

}  // namespace newsforge
