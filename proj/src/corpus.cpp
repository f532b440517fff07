#include "newsforge/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <unordered_set>

#include "json.hpp"

#include "newsforge/error.hpp"
#include "newsforge/stemmer.hpp"

namespace newsforge {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 5> kCategoryNames{
    "politics", "sports", "business", "entertainment", "technology"};

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Strips ASCII punctuation from both ends. Bytes >= 0x80 are left alone.
std::string_view trim_punct(std::string_view s) {
  auto is_punct = [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 && !is_ascii_alnum(u);
  };
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_punct(s[b])) ++b;
  while (e > b && is_punct(s[e - 1])) --e;
  return s.substr(b, e - b);
}

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> set{
      "mr.",   "mrs.", "ms.",  "dr.",   "prof.", "sr.",  "jr.",  "st.",  "u.s.",
      "u.k.",  "u.n.", "e.g.", "i.e.",  "etc.",  "vs.",  "inc.", "ltd.", "co.",
      "corp.", "gov.", "sen.", "rep.",  "gen.",  "jan.", "feb.", "mar.", "apr.",
      "jun.",  "jul.", "aug.", "sep.",  "sept.", "oct.", "nov.", "dec.", "mt.",
      "ft.",   "lt.",  "col.", "capt.", "sgt.",  "a.m.", "p.m."};
  return set;
}

const std::unordered_set<std::string>& stopword_set() {
  static const std::unordered_set<std::string> set(english_stopwords().begin(),
                                                    english_stopwords().end());
  return set;
}

bool is_closing(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

std::string collapse_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::string_view tok : split_whitespace(s)) {
    if (!out.empty()) out.push_back(' ');
    out.append(tok);
  }
  return out;
}

int parse_digits(std::string_view s, std::size_t pos, std::size_t n, bool& ok) {
  if (pos + n > s.size()) {
    ok = false;
    return 0;
  }
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') {
      ok = false;
      return 0;
    }
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

// RFC 3339 date-time: YYYY-MM-DD(T|t| )HH:MM:SS[.frac](Z|z|+HH:MM|-HH:MM)
bool valid_rfc3339(std::string_view s) {
  bool ok = true;
  const int year = parse_digits(s, 0, 4, ok);
  if (!ok || s.size() < 20 || s[4] != '-' || s[7] != '-') return false;
  const int month = parse_digits(s, 5, 2, ok);
  const int day = parse_digits(s, 8, 2, ok);
  if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return false;
  const int hour = parse_digits(s, 11, 2, ok);
  if (s[13] != ':') return false;
  const int minute = parse_digits(s, 14, 2, ok);
  if (s[16] != ':') return false;
  const int second = parse_digits(s, 17, 2, ok);
  if (!ok) return false;

  static constexpr std::array<int, 12> days{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return false;
  const int max_day = days[month - 1] + (month == 2 && is_leap(year) ? 1 : 0);
  if (day < 1 || day > max_day) return false;
  if (hour > 23 || minute > 59 || second > 60) return false;

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return false;
  }
  if (pos >= s.size()) return false;
  if (s[pos] == 'Z' || s[pos] == 'z') return pos + 1 == s.size();
  if (s[pos] != '+' && s[pos] != '-') return false;
  if (pos + 6 != s.size() || s[pos + 3] != ':') return false;
  const int off_h = parse_digits(s, pos + 1, 2, ok);
  const int off_m = parse_digits(s, pos + 4, 2, ok);
  return ok && off_h <= 23 && off_m <= 59;
}

struct LineFailure {
  std::string reason;
};

const std::string& required_string(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end()) throw LineFailure{std::string("missing field '") + field + "'"};
  if (!it->is_string()) throw LineFailure{std::string("field '") + field + "' must be a string"};
  return it->get_ref<const std::string&>();
}

std::vector<std::string> string_array(const json& value, const char* field) {
  if (!value.is_array()) throw LineFailure{std::string("field '") + field + "' must be an array"};
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto& v : value) {
    if (!v.is_string()) throw LineFailure{std::string("field '") + field + "' must hold strings"};
    out.push_back(v.get<std::string>());
  }
  return out;
}

NewsDocument document_from_json(const json& obj) {
  if (!obj.is_object()) throw LineFailure{"expected a JSON object"};
  NewsDocument doc;
  doc.id = required_string(obj, "id");
  doc.title = required_string(obj, "title");
  doc.body = required_string(obj, "text");

  const std::string& country = required_string(obj, "country");
  if (country.size() != 2 || !std::isalpha(static_cast<unsigned char>(country[0])) ||
      !std::isalpha(static_cast<unsigned char>(country[1])))
    throw LineFailure{"invalid country code '" + country + "'"};
  doc.country = {static_cast<char>(std::toupper(static_cast<unsigned char>(country[0]))),
                 static_cast<char>(std::toupper(static_cast<unsigned char>(country[1])))};

  const std::string& category = required_string(obj, "category");
  const auto cat = parse_category(category);
  if (!cat) throw LineFailure{"unknown category '" + category + "'"};
  doc.category = *cat;

  doc.language = required_string(obj, "language");
  doc.published = required_string(obj, "published");
  if (!valid_rfc3339(doc.published))
    throw LineFailure{"unparseable timestamp '" + doc.published + "'"};

  const auto sentences = obj.find("sentences");
  if (sentences != obj.end()) {
    if (!sentences->is_array()) throw LineFailure{"field 'sentences' must be an array"};
    for (const auto& s : *sentences) {
      if (!s.is_object()) throw LineFailure{"sentence entries must be objects"};
      Sentence sentence;
      sentence.raw = required_string(s, "text");
      const auto tokens = s.find("tokens");
      if (tokens == s.end()) throw LineFailure{"sentence entry missing 'tokens'"};
      sentence.tokens = string_array(*tokens, "tokens");
      doc.sentences.push_back(std::move(sentence));
    }
    doc.cleaned = true;
    const auto title_tokens = obj.find("title_tokens");
    if (title_tokens != obj.end()) {
      doc.title_tokens = string_array(*title_tokens, "title_tokens");
    } else {
      doc.title_tokens = tokenize(strip_non_ascii(doc.title));
    }
  }
  return doc;
}

}  // namespace

std::string_view to_string(Category c) noexcept {
  return kCategoryNames[static_cast<std::size_t>(c)];
}

std::optional<Category> parse_category(std::string_view name) noexcept {
  const std::string lowered = to_lower(name);
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i)
    if (lowered == kCategoryNames[i]) return static_cast<Category>(i);
  return std::nullopt;
}

void CleaningPolicy::validate() const {
  if (min_sentence_tokens < 1)
    throw Error(ErrorCode::InvalidArgument, "min_sentence_tokens must be >= 1");
  if (!(ascii_ratio_threshold >= 0.0 && ascii_ratio_threshold <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "ascii_ratio_threshold must lie in [0, 1]");
  if (english_stopword_hit_threshold < 0)
    throw Error(ErrorCode::InvalidArgument, "english_stopword_hit_threshold must be >= 0");
}

const std::vector<std::string>& english_stopwords() {
  static const std::vector<std::string> words{
      "the",  "of",    "and",   "to",    "a",    "in",   "is",   "it",    "that", "was",
      "for",  "on",    "are",   "with",  "as",   "he",   "be",   "at",    "by",   "this",
      "have", "from",  "or",    "had",   "not",  "but",  "what", "all",   "were", "when",
      "we",   "there", "can",   "an",    "your", "which", "their", "said", "if",  "do",
      "will", "each",  "about", "how",   "up",   "out",  "them", "then",  "she",  "they"};
  return words;
}

std::vector<std::string> segment_sentences(std::string_view text) {
  std::vector<std::string> out;
  auto emit = [&out](std::string_view piece) {
    const std::string_view t = trim(piece);
    if (!t.empty()) out.emplace_back(t);
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && (text[end] == '.' || text[end] == '!' || text[end] == '?')) ++end;
    const std::size_t punct_end = end;
    while (end < text.size() && is_closing(text[end])) ++end;
    const bool at_boundary =
        end == text.size() || is_space(static_cast<unsigned char>(text[end]));
    if (!at_boundary) {
      i = end;
      continue;
    }
    if (punct_end - i == 1 && c == '.') {
      std::size_t w = i;
      while (w > start && !is_space(static_cast<unsigned char>(text[w - 1]))) --w;
      std::string_view word = text.substr(w, i + 1 - w);
      while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\''))
        word.remove_prefix(1);
      if (abbreviations().contains(to_lower(word))) {
        i = end;
        continue;
      }
    }
    emit(text.substr(start, end - start));
    start = end;
    i = end;
  }
  emit(text.substr(start));
  return out;
}

std::string normalize_token(std::string_view word) {
  const std::string lowered = to_lower(trim_punct(word));
  if (lowered.empty()) return lowered;
  const bool letters_only = std::all_of(lowered.begin(), lowered.end(),
                                        [](char c) { return c >= 'a' && c <= 'z'; });
  return letters_only ? porter_stem(lowered) : lowered;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (std::string_view raw : split_whitespace(text)) {
    std::string tok = normalize_token(raw);
    if (!tok.empty()) out.push_back(std::move(tok));
  }
  return out;
}

std::string strip_non_ascii(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= 0x20 && c <= 0x7E) {
      out.push_back(ch);
    } else if (is_space(c)) {
      out.push_back(' ');
    }
  }
  return out;
}

double ascii_ratio(std::string_view text) {
  std::size_t code_points = 0;
  std::size_t ascii = 0;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if ((c & 0xC0) == 0x80) continue;  // continuation byte
    ++code_points;
    if (c < 0x80) ++ascii;
  }
  if (code_points == 0) return 1.0;
  return static_cast<double>(ascii) / static_cast<double>(code_points);
}

int english_stopword_hits(std::string_view text) {
  int hits = 0;
  for (std::string_view raw : split_whitespace(text))
    if (stopword_set().contains(to_lower(trim_punct(raw)))) ++hits;
  return hits;
}

std::vector<Sentence> clean_sentences(const std::vector<std::string>& sentences,
                                      const CleaningPolicy& policy) {
  policy.validate();
  std::vector<Sentence> out;
  for (const std::string& raw : sentences) {
    if (english_stopword_hits(raw) < policy.english_stopword_hit_threshold &&
        ascii_ratio(raw) < policy.ascii_ratio_threshold)
      continue;
    Sentence s;
    s.raw = collapse_spaces(strip_non_ascii(raw));
    s.tokens = tokenize(s.raw);
    if (s.tokens.size() < static_cast<std::size_t>(policy.min_sentence_tokens)) continue;
    out.push_back(std::move(s));
  }
  return out;
}

void clean_document(NewsDocument& doc, const CleaningPolicy& policy) {
  doc.title_tokens = tokenize(strip_non_ascii(doc.title));
  doc.sentences = clean_sentences(segment_sentences(doc.body), policy);
  doc.cleaned = true;
}

ParseResult parse_documents(std::istream& in, const CleaningPolicy& policy) {
  policy.validate();
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    try {
      json obj;
      try {
        obj = json::parse(line);
      } catch (const json::parse_error& e) {
        throw LineFailure{std::string("invalid JSON: ") + e.what()};
      }
      result.documents.push_back(document_from_json(obj));
    } catch (const LineFailure& f) {
      if (policy.strict_parse)
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + f.reason);
      result.errors.push_back({line_no, f.reason});
    }
  }
  return result;
}

std::string to_json_line(const NewsDocument& doc) {
  nlohmann::ordered_json j;
  j["id"] = doc.id;
  j["title"] = doc.title;
  j["text"] = doc.body;
  j["country"] = doc.country;
  j["category"] = std::string(to_string(doc.category));
  j["language"] = doc.language;
  j["published"] = doc.published;
  if (doc.cleaned) {
    j["title_tokens"] = doc.title_tokens;
    auto sentences = nlohmann::ordered_json::array();
    for (const Sentence& s : doc.sentences)
      sentences.push_back({{"text", s.raw}, {"tokens", s.tokens}});
    j["sentences"] = std::move(sentences);
  }
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

ParseResult load_corpus(const std::string& path, const CleaningPolicy& policy) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  ParseResult result = parse_documents(in, policy);
  for (NewsDocument& doc : result.documents)
    if (!doc.cleaned) clean_document(doc, policy);
  return result;
}

}  // namespace newsforge
