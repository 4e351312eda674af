#include "scistory/text/segmenter.hpp"

#include <algorithm>

#include "scistory/resources.hpp"
#include "scistory/text/utf8.hpp"

namespace scistory::text {

namespace {

bool is_terminal(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

bool is_closer(char32_t c) {
  return c == U')' || c == U']' || c == U'}' || c == U'"' || c == U'\'' || c == 0x2019 ||
         c == 0x201D || c == 0x00BB;
}

char32_t ascii_lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c - U'A' + U'a' : c; }

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

AbbreviationList::AbbreviationList(const std::vector<std::string>& entries) {
  for (const auto& raw : entries) {
    auto e = utf8::to_lower(trim(raw));
    if (e.empty()) continue;
    if (e.back() != '.') e.push_back('.');
    if (set_.insert(e).second) {
      entries_.push_back(e);
      max_length_ = std::max(max_length_, utf8::length(e));
    }
  }
}

AbbreviationList AbbreviationList::parse(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = trim(text.substr(pos, nl - pos));
    if (!line.empty() && line[0] != '#') lines.push_back(std::move(line));
    pos = nl + 1;
  }
  return AbbreviationList(lines);
}

AbbreviationList AbbreviationList::from_file(const std::string& path) {
  return parse(resources::read_file(path));
}

const AbbreviationList& AbbreviationList::bundled() {
  static const AbbreviationList list = parse(resources::abbreviations());
  return list;
}

bool SentenceSegmenter::closes_abbreviation(std::u32string_view text, std::size_t period) const {
  const std::size_t max_len = std::min(abbreviations_->max_length(), period + 1);
  for (std::size_t len = 2; len <= max_len; ++len) {
    const std::size_t begin = period + 1 - len;
    if (begin > 0) {
      const char32_t before = text[begin - 1];
      if (!utf8::is_space(before) && before != U'(' && before != U'[') continue;
    }
    std::u32string cand;
    cand.reserve(len);
    for (std::size_t k = begin; k <= period; ++k) cand.push_back(ascii_lower(text[k]));
    if (abbreviations_->contains(utf8::encode(cand))) return true;
  }
  return false;
}

std::vector<Span> SentenceSegmenter::segment(std::u32string_view text) const {
  std::vector<Span> spans;
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && utf8::is_space(text[begin])) ++begin;
  while (end > begin && utf8::is_space(text[end - 1])) --end;
  if (begin == end) return spans;

  std::size_t sentence_start = begin;
  std::size_t i = begin;
  while (i < end) {
    if (!is_terminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < end && is_terminal(text[j])) ++j;
    while (j < end && is_closer(text[j])) ++j;
    if (j >= end) break;
    if (!utf8::is_space(text[j])) {
      i = j;
      continue;
    }
    // Only a single period can close an abbreviation; "etc.." still splits.
    if (text[i] == U'.' && j == i + 1 && closes_abbreviation(text, i)) {
      i = j;
      continue;
    }
    std::size_t next = j;
    while (next < end && utf8::is_space(text[next])) ++next;
    if (next < end && utf8::is_lower(text[next])) {
      i = next;
      continue;
    }
    spans.push_back({sentence_start, j});
    sentence_start = next;
    i = next;
  }
  if (sentence_start < end) spans.push_back({sentence_start, end});
  return spans;
}

std::vector<Span> SentenceSegmenter::segment(std::string_view utf8_text) const {
  return segment(utf8::decode(utf8_text));
}

std::vector<Span> segment_sentences(std::string_view paragraph_text) {
  static const SentenceSegmenter segmenter;
  return segmenter.segment(paragraph_text);
}

}  // namespace scistory::text
