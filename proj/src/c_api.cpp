#include "newsforge/newsforge.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "newsforge/corpus.hpp"
#include "newsforge/embed.hpp"
#include "newsforge/error.hpp"
#include "newsforge/reduce.hpp"
#include "newsforge/report.hpp"
#include "newsforge/sentiment.hpp"
#include "newsforge/vectorize.hpp"

struct nf_corpus {
  newsforge::ParseResult parsed;
};

struct nf_lexicon {
  newsforge::SentimentLexicon lexicon;
};

struct nf_embedding {
  newsforge::EmbeddingModel model;
};

namespace {

thread_local std::string g_last_error;

nf_status to_status(newsforge::ErrorCode code) {
  using newsforge::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return NF_ERR_INVALID_ARGUMENT;
    case ErrorCode::Io: return NF_ERR_IO;
    case ErrorCode::Parse: return NF_ERR_PARSE;
    case ErrorCode::EmptyDocument: return NF_ERR_EMPTY_DOCUMENT;
    case ErrorCode::EmptyCorpus: return NF_ERR_EMPTY_CORPUS;
    case ErrorCode::EmptyInput: return NF_ERR_EMPTY_INPUT;
    case ErrorCode::TooFewInstances: return NF_ERR_TOO_FEW_INSTANCES;
    case ErrorCode::NoEnemies: return NF_ERR_NO_ENEMIES;
    case ErrorCode::UnknownWord: return NF_ERR_UNKNOWN_WORD;
    case ErrorCode::UnknownCountry: return NF_ERR_UNKNOWN_COUNTRY;
  }
  return NF_ERR_INTERNAL;
}

nf_status fail(nf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
nf_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return NF_OK;
  } catch (const newsforge::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NF_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw newsforge::Error(newsforge::ErrorCode::InvalidArgument, what);
}

// Writes to a file, or to stdout for NULL / "-".
class Sink {
 public:
  explicit Sink(const char* path) {
    if (path && std::strcmp(path, "-") != 0) {
      file_.open(path, std::ios::binary);
      if (!file_) throw newsforge::Error(newsforge::ErrorCode::Io, std::string("cannot open '") + path + "' for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void finish() {
    out_->flush();
    if (!*out_) throw newsforge::Error(newsforge::ErrorCode::Io, "write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* out_ = &std::cout;
};

newsforge::FusionConfig fusion_config(const nf_fusion_options* o, newsforge::FusionMethod* method) {
  nf_fusion_options d;
  nf_fusion_options_default(&d);
  if (!o) o = &d;
  require(o->method == NF_FUSION_MEAN || o->method == NF_FUSION_CORRENTROPY, "unknown fusion method");
  *method = o->method == NF_FUSION_MEAN ? newsforge::FusionMethod::Mean : newsforge::FusionMethod::Correntropy;
  newsforge::FusionConfig c;
  c.eta = o->eta;
  c.tolerance = o->tolerance;
  c.max_iterations = o->max_iterations;
  c.validate();
  return c;
}

const newsforge::SentimentLexicon& lexicon_or_bundled(const nf_lexicon* lex) {
  return lex ? lex->lexicon : newsforge::SentimentLexicon::bundled();
}

}  // namespace

extern "C" {

const char* nf_last_error(void) { return g_last_error.c_str(); }

const char* nf_status_string(nf_status status) {
  switch (status) {
    case NF_OK: return "ok";
    case NF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NF_ERR_IO: return "i/o error";
    case NF_ERR_PARSE: return "parse error";
    case NF_ERR_EMPTY_DOCUMENT: return "empty document";
    case NF_ERR_EMPTY_CORPUS: return "empty corpus";
    case NF_ERR_EMPTY_INPUT: return "empty input";
    case NF_ERR_TOO_FEW_INSTANCES: return "too few instances";
    case NF_ERR_NO_ENEMIES: return "no enemies";
    case NF_ERR_UNKNOWN_WORD: return "unknown word";
    case NF_ERR_UNKNOWN_COUNTRY: return "unknown country";
    case NF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void nf_cleaning_options_default(nf_cleaning_options* options) {
  if (!options) return;
  const newsforge::CleaningPolicy p;
  options->min_sentence_tokens = p.min_sentence_tokens;
  options->english_stopword_hit_threshold = p.english_stopword_hit_threshold;
  options->ascii_ratio_threshold = p.ascii_ratio_threshold;
  options->strict = p.strict_parse ? 1 : 0;
}

nf_status nf_corpus_load(const char* path, const nf_cleaning_options* options, nf_corpus** out) {
  return guarded([&] {
    require(path && out, "path and out must not be null");
    *out = nullptr;
    newsforge::CleaningPolicy policy;
    if (options) {
      policy.min_sentence_tokens = options->min_sentence_tokens;
      policy.english_stopword_hit_threshold = options->english_stopword_hit_threshold;
      policy.ascii_ratio_threshold = options->ascii_ratio_threshold;
      policy.strict_parse = options->strict != 0;
    }
    policy.validate();
    auto c = std::make_unique<nf_corpus>();
    c->parsed = newsforge::load_corpus(path, policy);
    *out = c.release();
  });
}

void nf_corpus_free(nf_corpus* corpus) { delete corpus; }

size_t nf_corpus_size(const nf_corpus* corpus) { return corpus ? corpus->parsed.documents.size() : 0; }

size_t nf_corpus_parse_error_count(const nf_corpus* corpus) {
  return corpus ? corpus->parsed.errors.size() : 0;
}

nf_status nf_corpus_parse_error(const nf_corpus* corpus, size_t index, size_t* line, const char** reason) {
  return guarded([&] {
    require(corpus, "corpus must not be null");
    require(index < corpus->parsed.errors.size(), "parse error index out of range");
    const auto& e = corpus->parsed.errors[index];
    if (line) *line = e.line;
    if (reason) *reason = e.reason.c_str();
  });
}

nf_status nf_corpus_write_cleaned(const nf_corpus* corpus, const char* out_path) {
  return guarded([&] {
    require(corpus, "corpus must not be null");
    Sink sink(out_path);
    for (const auto& doc : corpus->parsed.documents) sink.stream() << newsforge::to_json_line(doc) << '\n';
    sink.finish();
  });
}

nf_status nf_lexicon_bundled(nf_lexicon** out) {
  return guarded([&] {
    require(out, "out must not be null");
    *out = new nf_lexicon{newsforge::SentimentLexicon::bundled()};
  });
}

nf_status nf_lexicon_load(const char* path, nf_lexicon** out) {
  return guarded([&] {
    require(path && out, "path and out must not be null");
    *out = nullptr;
    *out = new nf_lexicon{newsforge::SentimentLexicon::load_file(path)};
  });
}

void nf_lexicon_free(nf_lexicon* lexicon) { delete lexicon; }

size_t nf_lexicon_size(const nf_lexicon* lexicon) { return lexicon ? lexicon->lexicon.size() : 0; }

void nf_fusion_options_default(nf_fusion_options* options) {
  if (!options) return;
  const newsforge::FusionConfig c;
  options->method = NF_FUSION_CORRENTROPY;
  options->eta = c.eta;
  options->tolerance = c.tolerance;
  options->max_iterations = c.max_iterations;
}

nf_status nf_fuse(const double* values, size_t n, const nf_fusion_options* options, double* value,
                  double* weights, int* iterations, int* converged) {
  return guarded([&] {
    require(values || n == 0, "values must not be null");
    newsforge::FusionMethod method;
    const auto config = fusion_config(options, &method);
    const auto r = newsforge::fuse(std::span<const double>(values, n), method, config);
    if (value) *value = r.value;
    if (weights) std::copy(r.weights.begin(), r.weights.end(), weights);
    if (iterations) *iterations = r.iterations;
    if (converged) *converged = r.converged ? 1 : 0;
  });
}

nf_status nf_corpus_fuse(const nf_corpus* corpus, const nf_lexicon* lexicon, const nf_fusion_options* options,
                         const char* out_path, size_t* scored, size_t* skipped) {
  return guarded([&] {
    require(corpus, "corpus must not be null");
    newsforge::FusionMethod method;
    const auto config = fusion_config(options, &method);
    const newsforge::LexiconScorer scorer(lexicon_or_bundled(lexicon));
    const auto fused = newsforge::fuse_corpus(corpus->parsed.documents, scorer, method, config);
    Sink sink(out_path);
    for (const auto& d : fused.documents) {
      nlohmann::ordered_json j{{"id", d.id},
                               {"country", d.country},
                               {"category", std::string(newsforge::to_string(d.category))},
                               {"sentiment", d.sentiment},
                               {"converged", d.converged},
                               {"iterations", d.iterations}};
      sink.stream() << j.dump() << '\n';
    }
    sink.finish();
    if (scored) *scored = fused.documents.size();
    if (skipped) *skipped = fused.skipped_ids.size();
  });
}

nf_status nf_corpus_vectorize(const nf_corpus* corpus, size_t min_df, const char* out_path,
                              size_t* vocabulary_size) {
  return guarded([&] {
    require(corpus, "corpus must not be null");
    require(min_df >= 1, "min_df must be at least 1");
    const auto& docs = corpus->parsed.documents;
    std::vector<std::vector<std::string>> titles;
    titles.reserve(docs.size());
    for (const auto& d : docs) titles.push_back(d.title_tokens);
    newsforge::TfIdfOptions opts;
    opts.min_df = min_df;
    opts.stopwords = newsforge::normalized_english_stopwords();
    const auto model = newsforge::build_model(titles, opts);
    Sink sink(out_path);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto v = model.vectorize(titles[i]);
      nlohmann::ordered_json j{{"id", docs[i].id},
                               {"label", std::string(newsforge::to_string(docs[i].category))},
                               {"indices", v.indices},
                               {"weights", v.weights}};
      sink.stream() << j.dump() << '\n';
    }
    sink.finish();
    if (vocabulary_size) *vocabulary_size = model.vocabulary().size();
  });
}

nf_status nf_corpus_reduce(const nf_corpus* corpus, const char* country, size_t k, size_t max_output,
                           const char* out_path, size_t* retained) {
  return guarded([&] {
    require(corpus && country, "corpus and country must not be null");
    require(k >= 1, "k must be at least 1");
    const std::optional<std::size_t> cap = max_output ? std::optional<std::size_t>(max_output) : std::nullopt;
    const auto result = newsforge::hottest_titles(corpus->parsed.documents, country, k, cap);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& t : result.titles) {
      arr.push_back({{"id", t.id},
                     {"title", t.title},
                     {"category", std::string(newsforge::to_string(t.category))},
                     {"rank", t.rank}});
    }
    Sink sink(out_path);
    sink.stream() << arr.dump(2) << '\n';
    sink.finish();
    if (retained) *retained = result.titles.size();
  });
}

void nf_train_options_default(nf_train_options* options) {
  if (!options) return;
  const newsforge::TrainConfig c;
  options->dimension = c.dimension;
  options->window = c.window;
  options->negatives = c.negatives;
  options->epochs = c.epochs;
  options->initial_rate = c.initial_rate;
  options->final_rate = c.final_rate;
  options->min_count = c.min_count;
  options->subsample_threshold = c.subsample_threshold;
  options->seed = c.seed;
}

nf_status nf_embedding_train(const nf_corpus* corpus, const nf_train_options* options, nf_embedding** out) {
  return guarded([&] {
    require(corpus && out, "corpus and out must not be null");
    *out = nullptr;
    nf_train_options o;
    nf_train_options_default(&o);
    if (options) o = *options;
    newsforge::TrainConfig c;
    c.dimension = o.dimension;
    c.window = o.window;
    c.negatives = o.negatives;
    c.epochs = o.epochs;
    c.initial_rate = o.initial_rate;
    c.final_rate = o.final_rate;
    c.min_count = o.min_count;
    c.subsample_threshold = o.subsample_threshold;
    c.seed = o.seed;
    c.validate();
    auto model = newsforge::train(newsforge::embedding_corpus(corpus->parsed.documents), c);
    *out = new nf_embedding{std::move(model)};
  });
}

nf_status nf_embedding_save(const nf_embedding* model, const char* path) {
  return guarded([&] {
    require(model && path, "model and path must not be null");
    model->model.save(path);
  });
}

nf_status nf_embedding_load(const char* path, nf_embedding** out) {
  return guarded([&] {
    require(path && out, "path and out must not be null");
    *out = nullptr;
    *out = new nf_embedding{newsforge::EmbeddingModel::load(path)};
  });
}

void nf_embedding_free(nf_embedding* model) { delete model; }

size_t nf_embedding_vocabulary_size(const nf_embedding* model) { return model ? model->model.size() : 0; }

size_t nf_embedding_dimension(const nf_embedding* model) { return model ? model->model.dimension : 0; }

nf_status nf_embedding_neighbors(const nf_embedding* model, const char* word, size_t n, nf_neighbor* out,
                                 size_t* count) {
  return guarded([&] {
    require(model && word && count, "model, word and count must not be null");
    require(out || n == 0, "out must not be null");
    const auto found = newsforge::nearest_words(model->model, word, n);
    for (std::size_t i = 0; i < found.size(); ++i) {
      // Point at the model's own copy so the string outlives this call.
      const auto idx = model->model.index_of(found[i].word);
      out[i].word = model->model.words[static_cast<std::size_t>(idx)].c_str();
      out[i].similarity = found[i].similarity;
    }
    *count = found.size();
  });
}

nf_status nf_corpus_report(const nf_corpus* corpus, const nf_lexicon* lexicon, const nf_fusion_options* options,
                           const char* out_dir, nf_report_summary* summary) {
  return guarded([&] {
    require(corpus && out_dir, "corpus and out_dir must not be null");
    newsforge::FusionMethod method;
    const auto config = fusion_config(options, &method);
    const newsforge::LexiconScorer scorer(lexicon_or_bundled(lexicon));
    const auto s = newsforge::run_report_pipeline(corpus->parsed.documents, scorer, method, config, out_dir);
    if (summary) {
      summary->documents_read = s.documents_read;
      summary->documents_scored = s.documents_scored;
      summary->documents_skipped = s.skipped_ids.size();
      summary->countries = s.table.countries().size();
    }
  });
}

}  // extern "C"
