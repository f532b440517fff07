#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace newsforge {

enum class Category { Politics, Sports, Business, Entertainment, Technology };

inline constexpr std::array<Category, 5> kAllCategories{
    Category::Politics, Category::Sports, Category::Business, Category::Entertainment,
    Category::Technology};

std::string_view to_string(Category c) noexcept;
/// Case-insensitive; nullopt for anything outside the five categories.
std::optional<Category> parse_category(std::string_view name) noexcept;

struct Sentence {
  std::string raw;                  // text after non-ASCII deletion
  std::vector<std::string> tokens;  // lowercase, stemmed, non-empty
};

struct NewsDocument {
  std::string id;
  std::string title;
  std::string body;
  std::string country;  // ISO 3166-1 alpha-2, uppercase
  Category category = Category::Politics;
  std::string language;
  std::string published;  // RFC 3339, validated

  // Populated by clean_document (or read back from a cleaned file).
  bool cleaned = false;
  std::vector<std::string> title_tokens;
  std::vector<Sentence> sentences;
};

struct CleaningPolicy {
  int min_sentence_tokens = 5;
  int english_stopword_hit_threshold = 1;
  double ascii_ratio_threshold = 0.9;
  bool strict_parse = false;

  /// Throws Error(InvalidArgument) when a field is out of range.
  void validate() const;
};

struct ParseError {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct ParseResult {
  std::vector<NewsDocument> documents;
  std::vector<ParseError> errors;
};

/// Reads newline-delimited JSON documents. Blank lines are skipped. Lines
/// that fail validation become ParseError records, unless
/// policy.strict_parse is set, in which case the first failure throws
/// Error(Parse). A line may carry `title_tokens` and `sentences` from a
/// previous cleaning pass; such documents come back with `cleaned` set.
ParseResult parse_documents(std::istream& in, const CleaningPolicy& policy);

/// Splits on `.`, `!` or `?` followed by whitespace or end of input.
/// Known abbreviations (Mr., Dr., U.S., ...) never end a sentence.
std::vector<std::string> segment_sentences(std::string_view text);

/// Lowercases, strips leading/trailing punctuation, then stems. Returns an
/// empty string when nothing is left; callers discard those.
std::string normalize_token(std::string_view word);

/// Whitespace split followed by normalize_token, empties dropped.
std::vector<std::string> tokenize(std::string_view text);

/// Deletes every byte outside printable ASCII; tabs and newlines become
/// spaces.
std::string strip_non_ascii(std::string_view text);

/// Share of code points that are ASCII. Empty text counts as fully ASCII.
double ascii_ratio(std::string_view text);

/// Number of whitespace tokens (lowercased, ASCII punctuation trimmed) found
/// in the fixed English stopword list.
int english_stopword_hits(std::string_view text);

/// The fixed 50-word English stopword list, unstemmed.
const std::vector<std::string>& english_stopwords();

/// Filters in order: English heuristic, non-ASCII deletion, minimum token
/// count. Survivors are tokenized.
std::vector<Sentence> clean_sentences(const std::vector<std::string>& sentences,
                                      const CleaningPolicy& policy);

/// Segments and cleans the body and tokenizes the title.
void clean_document(NewsDocument& doc, const CleaningPolicy& policy);

/// Serializes one document as a single JSON line (no trailing newline),
/// including title_tokens and sentences when the document is cleaned.
std::string to_json_line(const NewsDocument& doc);

/// Reads a JSONL file and cleans every document that is not already cleaned.
/// Throws Error(Io) if the file cannot be opened.
ParseResult load_corpus(const std::string& path, const CleaningPolicy& policy);

}  // namespace newsforge
