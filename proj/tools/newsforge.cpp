// newsforge command line front end. Talks to the library only through the C API.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "newsforge/newsforge.h"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct CorpusDeleter {
  void operator()(nf_corpus* c) const { nf_corpus_free(c); }
};
struct LexiconDeleter {
  void operator()(nf_lexicon* l) const { nf_lexicon_free(l); }
};
struct EmbeddingDeleter {
  void operator()(nf_embedding* e) const { nf_embedding_free(e); }
};
using CorpusPtr = std::unique_ptr<nf_corpus, CorpusDeleter>;
using LexiconPtr = std::unique_ptr<nf_lexicon, LexiconDeleter>;
using EmbeddingPtr = std::unique_ptr<nf_embedding, EmbeddingDeleter>;

// Thrown to unwind to main with a status already reported.
struct Failure {
  int exit_code;
};

void check(nf_status s, const char* what) {
  if (s == NF_OK) return;
  std::fprintf(stderr, "newsforge: %s: %s (%s)\n", what, nf_last_error(), nf_status_string(s));
  throw Failure{s == NF_ERR_INTERNAL ? kExitInternal : kExitInput};
}

CorpusPtr load(const std::string& path, bool strict) {
  nf_cleaning_options opts;
  nf_cleaning_options_default(&opts);
  opts.strict = strict ? 1 : 0;
  nf_corpus* raw = nullptr;
  check(nf_corpus_load(path.c_str(), &opts, &raw), "loading corpus");
  CorpusPtr corpus(raw);
  const size_t errors = nf_corpus_parse_error_count(raw);
  for (size_t i = 0; i < errors; ++i) {
    size_t line = 0;
    const char* reason = nullptr;
    nf_corpus_parse_error(raw, i, &line, &reason);
    std::fprintf(stderr, "warning: %s:%zu: %s\n", path.c_str(), line, reason);
  }
  if (errors) std::fprintf(stderr, "warning: skipped %zu malformed line(s)\n", errors);
  return corpus;
}

LexiconPtr lexicon(const std::string& path) {
  nf_lexicon* raw = nullptr;
  if (path.empty())
    check(nf_lexicon_bundled(&raw), "loading bundled lexicon");
  else
    check(nf_lexicon_load(path.c_str(), &raw), "loading lexicon");
  return LexiconPtr(raw);
}

nf_fusion_options fusion(const std::string& method, double eta) {
  nf_fusion_options o;
  nf_fusion_options_default(&o);
  o.method = method == "mean" ? NF_FUSION_MEAN : NF_FUSION_CORRENTROPY;
  o.eta = eta;
  return o;
}

void warn_skipped(size_t skipped) {
  if (skipped)
    std::fprintf(stderr, "warning: %zu document(s) had no sentence left after cleaning and were skipped\n",
                 skipped);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"News analytics pipeline: cleaning, sentiment fusion, title selection, embeddings"};
  app.require_subcommand(1);

  std::string input, output = "-", lexicon_path, method = "correntropy", country, model_path, word, out_dir;
  std::string field = "title";
  bool strict = false;
  double eta = 1.0;
  size_t min_df = 1, k = 3, max_output = 0, count = 10;
  nf_train_options train;
  nf_train_options_default(&train);

  auto* clean = app.add_subcommand("clean", "Clean raw JSONL and add sentence tokens");
  clean->add_option("--input", input, "Raw JSONL corpus")->required();
  clean->add_option("--output", output, "Cleaned JSONL ('-' for stdout)");
  clean->add_flag("--strict", strict, "Fail on the first malformed line");

  auto* fuse = app.add_subcommand("fuse", "Per-document fused sentiment");
  fuse->add_option("--input", input, "Cleaned JSONL corpus")->required();
  fuse->add_option("--method", method, "Fusion method")->check(CLI::IsMember({"mean", "correntropy"}));
  fuse->add_option("--eta", eta, "Kernel bandwidth")->check(CLI::NonNegativeNumber);
  fuse->add_option("--lexicon", lexicon_path, "word<TAB>valence file (default: bundled)");
  fuse->add_option("--output", output, "Scores JSONL ('-' for stdout)");

  auto* vectorize = app.add_subcommand("vectorize", "tf-idf title vectors");
  vectorize->add_option("--input", input, "Cleaned JSONL corpus")->required();
  vectorize->add_option("--field", field, "Document field to vectorize")->check(CLI::IsMember({"title"}));
  vectorize->add_option("--min-df", min_df, "Minimum document frequency")->check(CLI::PositiveNumber);
  vectorize->add_option("--output", output, "Vectors JSONL ('-' for stdout)");

  auto* reduce = app.add_subcommand("reduce", "Representative titles of one country");
  reduce->add_option("--input", input, "Cleaned JSONL corpus")->required();
  reduce->add_option("--country", country, "ISO 3166-1 alpha-2 code")->required();
  reduce->add_option("--k", k, "Neighbors for ENN and DROP3")->check(CLI::PositiveNumber);
  reduce->add_option("--max-output", max_output, "Keep at most N titles (0: all)");
  reduce->add_option("--output", output, "Titles JSON ('-' for stdout)");

  auto* embed = app.add_subcommand("embed", "Train skip-gram embeddings");
  embed->add_option("--input", input, "Cleaned JSONL corpus")->required();
  embed->add_option("--dim", train.dimension, "Vector dimension")->check(CLI::PositiveNumber);
  embed->add_option("--seed", train.seed, "Random seed");
  embed->add_option("--window", train.window, "Maximum context radius")->check(CLI::PositiveNumber);
  embed->add_option("--negatives", train.negatives, "Negative samples per pair");
  embed->add_option("--epochs", train.epochs, "Passes over the corpus")->check(CLI::PositiveNumber);
  embed->add_option("--min-count", train.min_count, "Discard rarer words");
  embed->add_option("--output", output, "Model text file")->required();

  auto* neighbors = app.add_subcommand("neighbors", "Nearest words in a saved model");
  neighbors->add_option("--model", model_path, "Model text file")->required();
  neighbors->add_option("--word", word, "Query word")->required();
  neighbors->add_option("-n", count, "Number of neighbors");

  auto* report = app.add_subcommand("report", "Full pipeline: sentiment tables, rankings and radar chart");
  report->add_option("--input", input, "JSONL corpus (raw or cleaned)")->required();
  report->add_option("--method", method, "Fusion method")->check(CLI::IsMember({"mean", "correntropy"}));
  report->add_option("--eta", eta, "Kernel bandwidth")->check(CLI::NonNegativeNumber);
  report->add_option("--lexicon", lexicon_path, "word<TAB>valence file (default: bundled)");
  report->add_option("--out-dir", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*clean) {
      auto corpus = load(input, strict);
      check(nf_corpus_write_cleaned(corpus.get(), output.c_str()), "writing cleaned corpus");
    } else if (*fuse) {
      auto corpus = load(input, false);
      auto lex = lexicon(lexicon_path);
      const auto opts = fusion(method, eta);
      size_t scored = 0, skipped = 0;
      check(nf_corpus_fuse(corpus.get(), lex.get(), &opts, output.c_str(), &scored, &skipped), "fusing");
      warn_skipped(skipped);
    } else if (*vectorize) {
      auto corpus = load(input, false);
      size_t vocab = 0;
      check(nf_corpus_vectorize(corpus.get(), min_df, output.c_str(), &vocab), "vectorizing");
      std::fprintf(stderr, "vocabulary: %zu terms\n", vocab);
    } else if (*reduce) {
      auto corpus = load(input, false);
      size_t kept = 0;
      check(nf_corpus_reduce(corpus.get(), country.c_str(), k, max_output, output.c_str(), &kept), "reducing");
    } else if (*embed) {
      auto corpus = load(input, false);
      nf_embedding* raw = nullptr;
      check(nf_embedding_train(corpus.get(), &train, &raw), "training");
      EmbeddingPtr model(raw);
      check(nf_embedding_save(model.get(), output.c_str()), "saving model");
      std::fprintf(stderr, "vocabulary: %zu words, dimension %zu\n", nf_embedding_vocabulary_size(raw),
                   nf_embedding_dimension(raw));
    } else if (*neighbors) {
      nf_embedding* raw = nullptr;
      check(nf_embedding_load(model_path.c_str(), &raw), "loading model");
      EmbeddingPtr model(raw);
      std::vector<nf_neighbor> found(count);
      size_t n = 0;
      check(nf_embedding_neighbors(raw, word.c_str(), count, found.data(), &n), "querying");
      for (size_t i = 0; i < n; ++i) std::printf("%s\t%.6f\n", found[i].word, found[i].similarity);
    } else if (*report) {
      auto corpus = load(input, false);
      auto lex = lexicon(lexicon_path);
      const auto opts = fusion(method, eta);
      nf_report_summary summary{};
      check(nf_corpus_report(corpus.get(), lex.get(), &opts, out_dir.c_str(), &summary), "reporting");
      warn_skipped(summary.documents_skipped);
      std::fprintf(stderr, "scored %zu of %zu documents across %zu countries; wrote %s\n",
                   summary.documents_scored, summary.documents_read, summary.countries, out_dir.c_str());
    }
  } catch (const Failure& f) {
    return f.exit_code;
  }
  return 0;
}
