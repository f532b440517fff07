#include "newsforge/stemmer.hpp"

#include <array>
#include <utility>

namespace newsforge {
namespace {

bool is_vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Working buffer for one word. `y` counts as a consonant at the start of a
// word or after a vowel, and as a vowel after a consonant.
class Stem {
 public:
  explicit Stem(std::string_view w) : word_(w) {}

  std::string take() && { return std::move(word_); }

  bool consonant(std::size_t i) const {
    const char c = word_[i];
    if (is_vowel_letter(c)) return false;
    if (c == 'y') return i == 0 ? true : !consonant(i - 1);
    return true;
  }

  // Number of VC sequences in word_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < len; ++i) {
      const bool cons = consonant(i);
      if (cons && prev_vowel) ++m;
      prev_vowel = !cons;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && word_[len - 1] == word_[len - 2] && consonant(len - 1);
  }

  // *o: stem ends consonant-vowel-consonant, final consonant not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 3) || consonant(len - 2) || !consonant(len - 1)) return false;
    const char c = word_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends_with(std::string_view suffix) const {
    return word_.size() >= suffix.size() &&
           std::string_view(word_).substr(word_.size() - suffix.size()) == suffix;
  }

  std::size_t size() const { return word_.size(); }
  char back() const { return word_.back(); }
  char at(std::size_t i) const { return word_[i]; }

  void replace_suffix(std::size_t suffix_len, std::string_view with) {
    word_.resize(word_.size() - suffix_len);
    word_.append(with);
  }

 private:
  std::string word_;
};

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Applies the first rule whose suffix matches, provided the remaining stem
// has measure > min_measure. Only the first matching suffix is considered.
bool apply_first(Stem& s, const auto& rules, int min_measure) {
  for (const Rule& r : rules) {
    if (!s.ends_with(r.suffix)) continue;
    const std::size_t stem_len = s.size() - r.suffix.size();
    if (s.measure(stem_len) > min_measure) {
      s.replace_suffix(r.suffix.size(), r.replacement);
      return true;
    }
    return false;
  }
  return false;
}

void step1a(Stem& s) {
  if (s.ends_with("sses")) {
    s.replace_suffix(4, "ss");
  } else if (s.ends_with("ies")) {
    s.replace_suffix(3, "i");
  } else if (s.ends_with("ss")) {
    // unchanged
  } else if (s.ends_with("s")) {
    s.replace_suffix(1, "");
  }
}

void step1b(Stem& s) {
  if (s.ends_with("eed")) {
    if (s.measure(s.size() - 3) > 0) s.replace_suffix(1, "");
    return;
  }
  std::size_t cut = 0;
  if (s.ends_with("ed") && s.has_vowel(s.size() - 2)) {
    cut = 2;
  } else if (s.ends_with("ing") && s.has_vowel(s.size() - 3)) {
    cut = 3;
  }
  if (cut == 0) return;
  s.replace_suffix(cut, "");

  if (s.ends_with("at") || s.ends_with("bl") || s.ends_with("iz")) {
    s.replace_suffix(0, "e");
  } else if (s.double_consonant(s.size())) {
    const char c = s.back();
    if (c != 'l' && c != 's' && c != 'z') s.replace_suffix(1, "");
  } else if (s.measure(s.size()) == 1 && s.cvc(s.size())) {
    s.replace_suffix(0, "e");
  }
}

void step1c(Stem& s) {
  if (s.ends_with("y") && s.has_vowel(s.size() - 1)) s.replace_suffix(1, "i");
}

void step2(Stem& s) {
  static constexpr std::array<Rule, 21> rules{{
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},  {"anci", "ance"},
      {"izer", "ize"},    {"bli", "ble"},     {"alli", "al"},    {"entli", "ent"},
      {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
      {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
      {"logi", "log"},
  }};
  apply_first(s, rules, 0);
}

void step3(Stem& s) {
  static constexpr std::array<Rule, 7> rules{{
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""},
  }};
  apply_first(s, rules, 0);
}

void step4(Stem& s) {
  static constexpr std::array<std::string_view, 19> suffixes{
      "al",  "ance", "ence", "er", "ic",  "able", "ible", "ant", "ement", "ment",
      "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
  for (std::string_view suffix : suffixes) {
    if (!s.ends_with(suffix)) continue;
    const std::size_t stem_len = s.size() - suffix.size();
    bool ok = s.measure(stem_len) > 1;
    if (ok && suffix == "ion") {
      const char c = stem_len > 0 ? s.at(stem_len - 1) : '\0';
      ok = c == 's' || c == 't';
    }
    if (ok) s.replace_suffix(suffix.size(), "");
    return;
  }
}

void step5(Stem& s) {
  if (s.ends_with("e")) {
    const std::size_t stem_len = s.size() - 1;
    const int m = s.measure(stem_len);
    if (m > 1 || (m == 1 && !s.cvc(stem_len))) s.replace_suffix(1, "");
  }
  if (s.ends_with("ll") && s.measure(s.size()) > 1) s.replace_suffix(1, "");
}

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  Stem s(word);
  step1a(s);
  step1b(s);
  step1c(s);
  step2(s);
  step3(s);
  step4(s);
  step5(s);
  return std::move(s).take();
}

}  // namespace newsforge
