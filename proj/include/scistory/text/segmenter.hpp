#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace scistory::text {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Span&) const = default;
};

// Abbreviations are stored lowercased with their trailing period, e.g. "fig.".
class AbbreviationList {
 public:
  AbbreviationList() = default;
  explicit AbbreviationList(const std::vector<std::string>& entries);

  // One abbreviation per line; blank lines and '#' comments ignored.
  static AbbreviationList parse(std::string_view text);
  static AbbreviationList from_file(const std::string& path);
  static const AbbreviationList& bundled();

  bool contains(std::string_view lowered) const { return set_.count(std::string(lowered)) > 0; }
  const std::vector<std::string>& entries() const noexcept { return entries_; }
  // Longest abbreviation length in scalars; bounds backward scans.
  std::size_t max_length() const noexcept { return max_length_; }

 private:
  std::vector<std::string> entries_;
  std::unordered_set<std::string> set_;
  std::size_t max_length_ = 0;
};

/// Rule-based sentence splitter.
///
/// A sentence ends at '.', '!' or '?' (plus any trailing closing quotes or
/// brackets) when followed by whitespace and a character that is not a
/// lowercase letter, or by the end of the text. A period that closes a
/// listed abbreviation never ends a sentence, and a period with no
/// following whitespace (decimals, "e.g.x") is never a boundary.
class SentenceSegmenter {
 public:
  explicit SentenceSegmenter(const AbbreviationList& abbreviations = AbbreviationList::bundled())
      : abbreviations_(&abbreviations) {}

  // Spans tile the whitespace-trimmed text; offsets in scalars.
  std::vector<Span> segment(std::u32string_view text) const;
  std::vector<Span> segment(std::string_view utf8_text) const;

 private:
  bool closes_abbreviation(std::u32string_view text, std::size_t period) const;

  const AbbreviationList* abbreviations_;
};

std::vector<Span> segment_sentences(std::string_view paragraph_text);

}  // namespace scistory::text
