#include "newsforge/embed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "newsforge/error.hpp"

namespace newsforge {
namespace {

constexpr double kNoisePower = 0.75;
constexpr int kNegativeRedraws = 10;
constexpr std::uint64_t kTrainStreamSalt = 0x9E3779B97F4A7C15ULL;

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double log_sigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

template <typename T>
T sigmoid(T x) {
  return T(1) / (T(1) + std::exp(-x));
}

template <typename T>
T dot(std::span<const T> a, std::span<const T> b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string format_float(float v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string sidecar_path(const std::string& path) { return path + ".json"; }

nlohmann::ordered_json config_json(const TrainConfig& c, std::size_t vocab_size) {
  nlohmann::ordered_json j;
  j["dimension"] = c.dimension;
  j["window"] = c.window;
  j["negatives"] = c.negatives;
  j["epochs"] = c.epochs;
  j["initial_rate"] = c.initial_rate;
  j["final_rate"] = c.final_rate;
  j["min_count"] = c.min_count;
  j["subsample_threshold"] = c.subsample_threshold;
  j["seed"] = c.seed;
  j["vocab_size"] = vocab_size;
  return j;
}

}  // namespace

TokenCorpus embedding_corpus(std::span<const NewsDocument> docs) {
  TokenCorpus out;
  for (const NewsDocument& doc : docs) {
    if (!doc.title_tokens.empty()) out.push_back(doc.title_tokens);
    for (const Sentence& s : doc.sentences) out.push_back(s.tokens);
  }
  return out;
}

void TrainConfig::validate() const {
  if (dimension < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (window < 1) throw Error(ErrorCode::InvalidArgument, "window must be >= 1");
  if (negatives < 1) throw Error(ErrorCode::InvalidArgument, "negatives must be >= 1");
  if (!(initial_rate > 0.0) || !(final_rate > 0.0))
    throw Error(ErrorCode::InvalidArgument, "learning rates must be positive");
  if (initial_rate < final_rate)
    throw Error(ErrorCode::InvalidArgument, "initial_rate must be >= final_rate");
  if (min_count < 1) throw Error(ErrorCode::InvalidArgument, "min_count must be >= 1");
  if (!(subsample_threshold >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "subsample_threshold must be >= 0");
}

EmbedVocab EmbedVocab::build(const TokenCorpus& corpus, std::size_t min_count) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& sentence : corpus)
    for (const std::string& w : sentence)
      if (!w.empty()) ++counts[w];

  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [w, c] : counts)
    if (c >= min_count) kept.emplace_back(w, c);
  if (kept.empty())
    throw Error(ErrorCode::EmptyInput,
                "no word occurs at least min_count = " + std::to_string(min_count) + " times");
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  EmbedVocab v;
  double z = 0.0;
  for (auto& [w, c] : kept) {
    v.index_.emplace(w, v.words_.size());
    v.words_.push_back(w);
    v.counts_.push_back(c);
    v.total_ += c;
    const double p = std::pow(static_cast<double>(c), kNoisePower);
    v.noise_.push_back(p);
    z += p;
  }
  double acc = 0.0;
  for (double& p : v.noise_) {
    p /= z;
    acc += p;
    v.noise_cdf_.push_back(acc);
  }
  v.noise_cdf_.back() = 1.0;
  return v;
}

std::int64_t EmbedVocab::index_of(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::size_t EmbedVocab::sample_noise(double u) const {
  const auto it = std::upper_bound(noise_cdf_.begin(), noise_cdf_.end(), u);
  const auto idx = static_cast<std::size_t>(it - noise_cdf_.begin());
  return std::min(idx, noise_cdf_.size() - 1);
}

EmbedVocab build_embed_vocab(const TokenCorpus& corpus, std::size_t min_count) {
  return EmbedVocab::build(corpus, min_count);
}

std::int64_t EmbeddingModel::index_of(std::string_view word) const {
  const auto it = std::find(words.begin(), words.end(), word);
  return it == words.end() ? -1 : static_cast<std::int64_t>(it - words.begin());
}

std::string EmbeddingModel::to_text() const {
  std::string out = std::to_string(words.size()) + " " + std::to_string(dimension) + "\n";
  for (std::size_t i = 0; i < words.size(); ++i) {
    out += words[i];
    for (float v : input_vector(i)) {
      out.push_back(' ');
      out += format_float(v);
    }
    out.push_back('\n');
  }
  return out;
}

void EmbeddingModel::save(const std::string& path) const {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write model '" + path + "'");
    out << to_text();
    if (!out) throw Error(ErrorCode::Io, "failed writing model '" + path + "'");
  }
  std::ofstream side(sidecar_path(path), std::ios::binary);
  if (!side) throw Error(ErrorCode::Io, "cannot write '" + sidecar_path(path) + "'");
  side << config_json(config, words.size()).dump(2) << "\n";
}

EmbeddingModel EmbeddingModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open model '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "model file is empty");
  std::istringstream header(line);
  std::size_t vocab_size = 0;
  EmbeddingModel m;
  if (!(header >> vocab_size >> m.dimension) || m.dimension == 0)
    throw Error(ErrorCode::Parse, "bad model header '" + line + "'");

  m.words.reserve(vocab_size);
  m.input.reserve(vocab_size * m.dimension);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    if (!std::getline(in, line))
      throw Error(ErrorCode::Parse, "model ends after " + std::to_string(i) + " of " +
                                        std::to_string(vocab_size) + " words");
    const char* p = line.data();
    const char* end = p + line.size();
    const char* word_end = std::find(p, end, ' ');
    m.words.emplace_back(p, word_end);
    p = word_end;
    for (std::size_t d = 0; d < m.dimension; ++d) {
      if (p == end || *p != ' ')
        throw Error(ErrorCode::Parse, "line " + std::to_string(i + 2) + ": too few components");
      ++p;
      float v = 0.0F;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc() || !std::isfinite(v))
        throw Error(ErrorCode::Parse, "line " + std::to_string(i + 2) + ": bad component");
      m.input.push_back(v);
      p = res.ptr;
    }
    if (p != end) throw Error(ErrorCode::Parse, "line " + std::to_string(i + 2) + ": trailing data");
  }

  m.config.dimension = m.dimension;
  if (std::filesystem::exists(sidecar_path(path))) {
    std::ifstream side(sidecar_path(path));
    try {
      const auto j = nlohmann::json::parse(side);
      m.config.window = j.value("window", m.config.window);
      m.config.negatives = j.value("negatives", m.config.negatives);
      m.config.epochs = j.value("epochs", m.config.epochs);
      m.config.initial_rate = j.value("initial_rate", m.config.initial_rate);
      m.config.final_rate = j.value("final_rate", m.config.final_rate);
      m.config.min_count = j.value("min_count", m.config.min_count);
      m.config.subsample_threshold = j.value("subsample_threshold", m.config.subsample_threshold);
      m.config.seed = j.value("seed", m.config.seed);
      if (j.value("dimension", m.dimension) != m.dimension)
        throw Error(ErrorCode::Parse, "sidecar dimension does not match model");
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, std::string("bad model sidecar: ") + e.what());
    }
  }
  return m;
}

EmbeddingModel initialize_model(const EmbedVocab& vocab, const TrainConfig& config) {
  config.validate();
  EmbeddingModel m;
  m.words = vocab.words();
  m.dimension = config.dimension;
  m.config = config;
  m.input.resize(vocab.size() * config.dimension);
  m.output.assign(vocab.size() * config.dimension, 0.0F);
  std::mt19937_64 rng(config.seed);
  const double dim = static_cast<double>(config.dimension);
  for (float& v : m.input) v = static_cast<float>((unit_uniform(rng) - 0.5) / dim);
  return m;
}

template <typename T>
double sgns_step(std::span<T> center, std::span<T> context, std::span<const std::span<T>> negatives,
                 T rate) {
  std::vector<T> center_delta(center.size(), T(0));
  double objective = 0.0;
  auto apply = [&](std::span<T> target, T label) {
    const T f = dot<T>(target, center);
    objective += label > T(0) ? log_sigmoid(static_cast<double>(f))
                              : log_sigmoid(-static_cast<double>(f));
    const T g = (label - sigmoid(f)) * rate;
    for (std::size_t i = 0; i < center.size(); ++i) center_delta[i] += g * target[i];
    for (std::size_t i = 0; i < center.size(); ++i) target[i] += g * center[i];
  };
  apply(context, T(1));
  for (const std::span<T>& neg : negatives) apply(neg, T(0));
  for (std::size_t i = 0; i < center.size(); ++i) center[i] += center_delta[i];
  return objective;
}

template double sgns_step<float>(std::span<float>, std::span<float>,
                                 std::span<const std::span<float>>, float);
template double sgns_step<double>(std::span<double>, std::span<double>,
                                  std::span<const std::span<double>>, double);

double sgns_objective(std::span<const double> center, std::span<const double> context,
                      std::span<const std::vector<double>> negatives) {
  double obj = log_sigmoid(dot<double>(context, center));
  for (const auto& neg : negatives) obj += log_sigmoid(-dot<double>(neg, center));
  return obj;
}

EmbeddingModel train(const TokenCorpus& corpus, const TrainConfig& config,
                     const EpochCallback& on_epoch) {
  config.validate();
  const EmbedVocab vocab = build_embed_vocab(corpus, config.min_count);
  EmbeddingModel model = initialize_model(vocab, config);
  const std::size_t dim = config.dimension;

  std::mt19937_64 rng(config.seed ^ kTrainStreamSalt);
  const double total_words = static_cast<double>(vocab.total_count());
  const double total_steps = total_words * static_cast<double>(config.epochs);
  const double t = config.subsample_threshold;

  auto input_row = [&](std::size_t w) { return std::span<float>(model.input.data() + w * dim, dim); };
  auto output_row = [&](std::size_t w) { return std::span<float>(model.output.data() + w * dim, dim); };

  std::uint64_t processed = 0;
  std::vector<std::size_t> kept;
  std::vector<std::uint64_t> kept_progress;
  std::vector<std::span<float>> negs;
  negs.reserve(config.negatives);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (const auto& sentence : corpus) {
      kept.clear();
      kept_progress.clear();
      for (const std::string& w : sentence) {
        const std::int64_t idx = vocab.index_of(w);
        if (idx < 0) continue;
        ++processed;
        if (t > 0.0) {
          const double f = static_cast<double>(vocab.counts()[static_cast<std::size_t>(idx)]) / total_words;
          const double keep = (std::sqrt(f / t) + 1.0) * t / f;
          if (keep < unit_uniform(rng)) continue;
        }
        kept.push_back(static_cast<std::size_t>(idx));
        kept_progress.push_back(processed);
      }

      for (std::size_t pos = 0; pos < kept.size(); ++pos) {
        const double progress = static_cast<double>(kept_progress[pos]) / total_steps;
        const double rate = std::max(
            config.final_rate, config.initial_rate - (config.initial_rate - config.final_rate) * progress);
        const std::size_t radius = 1 + static_cast<std::size_t>(rng() % config.window);
        const std::size_t lo = pos >= radius ? pos - radius : 0;
        const std::size_t hi = std::min(kept.size() - 1, pos + radius);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          const std::size_t context = kept[c];
          negs.clear();
          for (std::size_t n = 0; n < config.negatives; ++n) {
            for (int attempt = 0; attempt < kNegativeRedraws; ++attempt) {
              const std::size_t draw = vocab.sample_noise(unit_uniform(rng));
              if (draw != context) {
                negs.push_back(output_row(draw));
                break;
              }
            }
          }
          sgns_step<float>(input_row(kept[pos]), output_row(context), negs, static_cast<float>(rate));
        }
      }
    }
    if (on_epoch) on_epoch(epoch, model);
  }
  return model;
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) noexcept {
  double ab = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<double>(a[i]) * b[i];
    aa += static_cast<double>(a[i]) * a[i];
    bb += static_cast<double>(b[i]) * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

std::vector<Neighbor> nearest_words(const EmbeddingModel& model, std::string_view word, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  std::int64_t q = model.index_of(word);
  // Vocabulary entries are normalized tokens; accept the surface form too.
  if (q < 0) q = model.index_of(normalize_token(word));
  if (q < 0) throw Error(ErrorCode::UnknownWord, "'" + std::string(word) + "' is not in the vocabulary");
  const auto query = model.input_vector(static_cast<std::size_t>(q));

  std::vector<Neighbor> all;
  all.reserve(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (static_cast<std::int64_t>(i) == q) continue;
    all.push_back({model.words[i], cosine_similarity(query, model.input_vector(i))});
  }
  const std::size_t take = std::min(n, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                    [](const Neighbor& a, const Neighbor& b) {
                      if (a.similarity != b.similarity) return a.similarity > b.similarity;
                      return a.word < b.word;
                    });
  all.resize(take);
  return all;
}

}  // namespace newsforge
