#include "scistory/text/annotate.hpp"

#include "scistory/text/porter.hpp"
#include "scistory/text/utf8.hpp"

namespace scistory::text {

namespace {

bool is_word_char(char32_t c) { return utf8::is_alpha(c) || utf8::is_digit(c); }

bool is_apostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }

char32_t ascii_lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c - U'A' + U'a' : c; }

// Length of a bundled abbreviation (no internal spaces) starting at `pos`,
// or 0. The character after it must not continue a word.
std::size_t abbreviation_at(std::u32string_view s, std::size_t pos,
                            const AbbreviationList& abbreviations) {
  const std::size_t max_len = std::min(abbreviations.max_length(), s.size() - pos);
  for (std::size_t len = max_len; len >= 2; --len) {
    if (s[pos + len - 1] != U'.') continue;
    if (pos + len < s.size() && is_word_char(s[pos + len])) continue;
    std::u32string cand;
    bool has_space = false;
    for (std::size_t k = pos; k < pos + len; ++k) {
      if (utf8::is_space(s[k])) {
        has_space = true;
        break;
      }
      cand.push_back(ascii_lower(s[k]));
    }
    if (has_space) continue;
    if (abbreviations.contains(utf8::encode(cand))) return len;
  }
  return 0;
}

}  // namespace

std::vector<Span> tokenize(std::u32string_view s, const AbbreviationList& abbreviations) {
  std::vector<Span> out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    const char32_t c = s[i];
    if (utf8::is_space(c) || utf8::is_control(c)) {
      ++i;
      continue;
    }
    if (is_word_char(c)) {
      if (utf8::is_alpha(c)) {
        if (const auto len = abbreviation_at(s, i, abbreviations); len > 0) {
          out.push_back({i, i + len});
          i += len;
          continue;
        }
      }
      std::size_t j = i + 1;
      while (j < n) {
        if (is_word_char(s[j])) {
          ++j;
        } else if ((s[j] == U'-' || is_apostrophe(s[j])) && j + 1 < n && is_word_char(s[j + 1])) {
          j += 2;
        } else if ((s[j] == U'.' || s[j] == U',') && j + 1 < n && utf8::is_digit(s[j + 1]) &&
                   utf8::is_digit(s[j - 1])) {
          j += 2;
        } else {
          break;
        }
      }
      out.push_back({i, j});
      i = j;
      continue;
    }
    // Punctuation: runs of '.' or '-' stay together ("...", "--").
    std::size_t j = i + 1;
    if (c == U'.' || c == U'-') {
      while (j < n && s[j] == c) ++j;
    }
    out.push_back({i, j});
    i = j;
  }
  return out;
}

std::vector<Token> annotate(std::string_view sentence_text, const PosTagger& tagger) {
  const auto cps = utf8::decode(sentence_text);
  const auto spans = tokenize(cps);
  std::vector<std::string> words;
  words.reserve(spans.size());
  for (const auto& sp : spans) {
    words.push_back(utf8::encode(std::u32string_view(cps).substr(sp.start, sp.end - sp.start)));
  }
  const auto tags = tagger.tag(words);
  std::vector<Token> tokens;
  tokens.reserve(spans.size());
  for (std::size_t k = 0; k < spans.size(); ++k) {
    Token t;
    t.surface = words[k];
    t.pos = tags[k];
    t.stem = stem(words[k]);
    t.char_start = spans[k].start;
    t.char_end = spans[k].end;
    tokens.push_back(std::move(t));
  }
  return tokens;
}

std::vector<Token> annotate(std::string_view sentence_text) {
  return annotate(sentence_text, LexiconTagger::bundled());
}

}  // namespace scistory::text
