#ifndef NEWSFORGE_H
#define NEWSFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(NEWSFORGE_BUILDING)
#define NF_API __attribute__((visibility("default")))
#else
#define NF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nf_status {
  NF_OK = 0,
  NF_ERR_INVALID_ARGUMENT = 1,
  NF_ERR_IO = 2,
  NF_ERR_PARSE = 3,
  NF_ERR_EMPTY_DOCUMENT = 4,
  NF_ERR_EMPTY_CORPUS = 5,
  NF_ERR_EMPTY_INPUT = 6,
  NF_ERR_TOO_FEW_INSTANCES = 7,
  NF_ERR_NO_ENEMIES = 8,
  NF_ERR_UNKNOWN_WORD = 9,
  NF_ERR_UNKNOWN_COUNTRY = 10,
  NF_ERR_INTERNAL = 100
} nf_status;

/* Message for the last failing call on this thread; empty after success. */
NF_API const char* nf_last_error(void);
NF_API const char* nf_status_string(nf_status status);

typedef struct nf_corpus nf_corpus;
typedef struct nf_lexicon nf_lexicon;
typedef struct nf_embedding nf_embedding;

/* ---- corpus ---- */

typedef struct nf_cleaning_options {
  int min_sentence_tokens;
  int english_stopword_hit_threshold;
  double ascii_ratio_threshold;
  int strict; /* nonzero: the first malformed line fails the load */
} nf_cleaning_options;

NF_API void nf_cleaning_options_default(nf_cleaning_options* options);

/* Reads JSONL and cleans every document. `options` may be NULL. Malformed
   lines are skipped (non-strict) and reported through nf_corpus_parse_error. */
NF_API nf_status nf_corpus_load(const char* path, const nf_cleaning_options* options, nf_corpus** out);
NF_API void nf_corpus_free(nf_corpus* corpus);
NF_API size_t nf_corpus_size(const nf_corpus* corpus);
NF_API size_t nf_corpus_parse_error_count(const nf_corpus* corpus);
/* `reason` stays valid until the corpus is freed. */
NF_API nf_status nf_corpus_parse_error(const nf_corpus* corpus, size_t index, size_t* line, const char** reason);

/* Output paths: NULL or "-" writes to standard output. */
NF_API nf_status nf_corpus_write_cleaned(const nf_corpus* corpus, const char* out_path);

/* ---- sentiment ---- */

NF_API nf_status nf_lexicon_bundled(nf_lexicon** out);
NF_API nf_status nf_lexicon_load(const char* path, nf_lexicon** out);
NF_API void nf_lexicon_free(nf_lexicon* lexicon);
NF_API size_t nf_lexicon_size(const nf_lexicon* lexicon);

typedef enum nf_fusion_method { NF_FUSION_MEAN = 0, NF_FUSION_CORRENTROPY = 1 } nf_fusion_method;

typedef struct nf_fusion_options {
  nf_fusion_method method;
  double eta;
  double tolerance;
  int max_iterations;
} nf_fusion_options;

NF_API void nf_fusion_options_default(nf_fusion_options* options);

/* Fuses `n` sentence scores. `weights` (n entries) and the other outputs may
   be NULL. */
NF_API nf_status nf_fuse(const double* values, size_t n, const nf_fusion_options* options, double* value,
                         double* weights, int* iterations, int* converged);

/* One JSON line per scored document: id, country, category, sentiment,
   converged, iterations. Documents with no sentences are skipped and counted. */
NF_API nf_status nf_corpus_fuse(const nf_corpus* corpus, const nf_lexicon* lexicon,
                                const nf_fusion_options* options, const char* out_path, size_t* scored,
                                size_t* skipped);

/* ---- vectorize / reduce ---- */

/* Title tf-idf vectors, one JSON line per document: id, label (category),
   indices, weights. English stopwords are excluded from the vocabulary. */
NF_API nf_status nf_corpus_vectorize(const nf_corpus* corpus, size_t min_df, const char* out_path,
                                     size_t* vocabulary_size);

/* Representative titles of one country as a JSON array of
   {id, title, category, rank}. max_output 0 means all retained titles. */
NF_API nf_status nf_corpus_reduce(const nf_corpus* corpus, const char* country, size_t k, size_t max_output,
                                  const char* out_path, size_t* retained);

/* ---- embed ---- */

typedef struct nf_train_options {
  size_t dimension;
  size_t window;
  size_t negatives;
  size_t epochs;
  double initial_rate;
  double final_rate;
  size_t min_count;
  double subsample_threshold;
  uint64_t seed;
} nf_train_options;

NF_API void nf_train_options_default(nf_train_options* options);
NF_API nf_status nf_embedding_train(const nf_corpus* corpus, const nf_train_options* options, nf_embedding** out);
NF_API nf_status nf_embedding_save(const nf_embedding* model, const char* path);
NF_API nf_status nf_embedding_load(const char* path, nf_embedding** out);
NF_API void nf_embedding_free(nf_embedding* model);
NF_API size_t nf_embedding_vocabulary_size(const nf_embedding* model);
NF_API size_t nf_embedding_dimension(const nf_embedding* model);

typedef struct nf_neighbor {
  const char* word; /* owned by the model */
  double similarity;
} nf_neighbor;

/* Writes up to `n` neighbors into `out` and their number into `count`. */
NF_API nf_status nf_embedding_neighbors(const nf_embedding* model, const char* word, size_t n, nf_neighbor* out,
                                        size_t* count);

/* ---- report ---- */

typedef struct nf_report_summary {
  size_t documents_read;
  size_t documents_scored;
  size_t documents_skipped;
  size_t countries;
} nf_report_summary;

/* Writes sentiment.csv, sentiment.json, radar.svg and rankings.json into
   out_dir. `summary` may be NULL. */
NF_API nf_status nf_corpus_report(const nf_corpus* corpus, const nf_lexicon* lexicon,
                                  const nf_fusion_options* options, const char* out_dir,
                                  nf_report_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
