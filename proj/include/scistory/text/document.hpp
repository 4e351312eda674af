#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace scistory::text {

enum class SectionKind {
  abstract,
  introduction,
  related_work,
  method,
  experiment,
  discussion,
  conclusion,
  references,
  other,
};

std::string_view to_string(SectionKind kind) noexcept;
SectionKind section_kind_from_string(std::string_view name);

// All char offsets are half-open and count Unicode scalar values.
struct Token {
  std::string surface;
  std::string pos;
  std::string stem;
  std::size_t char_start = 0;  // within sentence
  std::size_t char_end = 0;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::size_t paragraph_index = 0;
  std::size_t sentence_index = 0;  // document-global
  std::size_t char_start = 0;      // within paragraph
  std::size_t char_end = 0;
  std::string text;
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

struct Paragraph {
  std::size_t index = 0;
  std::size_t offset = 0;  // start of text within Document::raw_text
  std::string text;
  std::vector<Sentence> sentences;

  bool operator==(const Paragraph&) const = default;
};

struct Section {
  std::string title;
  SectionKind kind = SectionKind::other;
  std::size_t first_paragraph = 0;  // [first_paragraph, end_paragraph)
  std::size_t end_paragraph = 0;

  bool contains(std::size_t paragraph) const noexcept {
    return paragraph >= first_paragraph && paragraph < end_paragraph;
  }
  bool operator==(const Section&) const = default;
};

struct Document {
  std::string id;
  std::string title;
  std::string pub_date;  // YYYY-MM-DD, may be empty
  std::vector<Section> sections;
  std::vector<Paragraph> paragraphs;
  // Normalized text: headings and paragraphs separated by blank lines.
  std::string raw_text;

  std::size_t sentence_count() const noexcept;
  // Sentences in document order; pointers stay valid while the document lives.
  std::vector<const Sentence*> sentences() const;
  const Sentence* find_sentence(std::size_t sentence_index) const noexcept;
  // Index of the section owning the paragraph, or npos.
  std::size_t section_of(std::size_t paragraph_index) const noexcept;

  bool operator==(const Document&) const = default;
};

}  // namespace scistory::text
