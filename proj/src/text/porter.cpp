#include "scistory/text/porter.hpp"

#include <array>
#include <utility>

#include "scistory/text/utf8.hpp"

namespace scistory::text {

namespace {

using Rule = std::pair<std::string_view, std::string_view>;

bool is_consonant(const std::string& w, std::size_t i) {
  switch (w[i]) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return false;
    case 'y':
      return i == 0 || !is_consonant(w, i - 1);
    default:
      return true;
  }
}

// Number of VC sequences in w[0, len).
int measure(const std::string& w, std::size_t len) {
  int m = 0;
  std::size_t i = 0;
  while (i < len && is_consonant(w, i)) ++i;
  while (i < len) {
    while (i < len && !is_consonant(w, i)) ++i;
    if (i >= len) break;
    while (i < len && is_consonant(w, i)) ++i;
    ++m;
  }
  return m;
}

bool has_vowel(const std::string& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (!is_consonant(w, i)) return true;
  }
  return false;
}

bool ends_double_consonant(const std::string& w, std::size_t len) {
  return len >= 2 && w[len - 1] == w[len - 2] && is_consonant(w, len - 1);
}

// *o: stem ends consonant-vowel-consonant, final consonant not w, x or y.
bool ends_cvc(const std::string& w, std::size_t len) {
  if (len < 3) return false;
  if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) || !is_consonant(w, len - 1)) {
    return false;
  }
  const char c = w[len - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         std::string_view(w).substr(w.size() - suffix.size()) == suffix;
}

std::size_t stem_len(const std::string& w, std::string_view suffix) {
  return w.size() - suffix.size();
}

void replace_suffix(std::string& w, std::string_view suffix, std::string_view repl) {
  w.resize(stem_len(w, suffix));
  w.append(repl);
}

// Longest-match semantics: the first rule whose suffix matches decides; if
// its condition fails no shorter rule is tried.
template <std::size_t N, typename Cond>
void apply_rules(std::string& w, const std::array<Rule, N>& rules, Cond cond) {
  for (const auto& [suffix, repl] : rules) {
    if (ends_with(w, suffix)) {
      if (cond(suffix)) replace_suffix(w, suffix, repl);
      return;
    }
  }
}

void step1a(std::string& w) {
  if (ends_with(w, "sses")) {
    replace_suffix(w, "sses", "ss");
  } else if (ends_with(w, "ies")) {
    replace_suffix(w, "ies", "i");
  } else if (ends_with(w, "ss")) {
    // unchanged
  } else if (ends_with(w, "s")) {
    w.pop_back();
  }
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(w, stem_len(w, "eed")) > 0) w.pop_back();
    return;
  }
  std::string_view removed;
  if (ends_with(w, "ed") && has_vowel(w, stem_len(w, "ed"))) {
    removed = "ed";
  } else if (ends_with(w, "ing") && has_vowel(w, stem_len(w, "ing"))) {
    removed = "ing";
  } else {
    return;
  }
  w.resize(stem_len(w, removed));
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w, w.size())) {
    const char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.pop_back();
  } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y") && has_vowel(w, w.size() - 1)) w.back() = 'i';
}

void step2(std::string& w) {
  static constexpr std::array<Rule, 20> rules{{
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
      {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
      {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
      {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
  }};
  apply_rules(w, rules, [&](std::string_view s) { return measure(w, stem_len(w, s)) > 0; });
}

void step3(std::string& w) {
  static constexpr std::array<Rule, 7> rules{{
      {"icate", "ic"},
      {"ative", ""},
      {"alize", "al"},
      {"iciti", "ic"},
      {"ical", "ic"},
      {"ful", ""},
      {"ness", ""},
  }};
  apply_rules(w, rules, [&](std::string_view s) { return measure(w, stem_len(w, s)) > 0; });
}

void step4(std::string& w) {
  static constexpr std::array<Rule, 19> rules{{
      {"al", ""},  {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
      {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
      {"ent", ""}, {"ion", ""},  {"ou", ""},   {"ism", ""}, {"ate", ""},
      {"iti", ""}, {"ous", ""},  {"ive", ""},  {"ize", ""},
  }};
  apply_rules(w, rules, [&](std::string_view s) {
    const auto len = stem_len(w, s);
    if (measure(w, len) <= 1) return false;
    if (s == "ion") return len > 0 && (w[len - 1] == 's' || w[len - 1] == 't');
    return true;
  });
}

void step5(std::string& w) {
  if (ends_with(w, "e")) {
    const auto len = w.size() - 1;
    const int m = measure(w, len);
    if (m > 1 || (m == 1 && !ends_cvc(w, len))) w.pop_back();
  }
  if (measure(w, w.size()) > 1 && ends_double_consonant(w, w.size()) && w.back() == 'l') {
    w.pop_back();
  }
}

}  // namespace

std::string stem(std::string_view word) {
  std::string w = utf8::to_lower(word);
  if (w.size() <= 2) return w;
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5(w);
  return w;
}

}  // namespace scistory::text
