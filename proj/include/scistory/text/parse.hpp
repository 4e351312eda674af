#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "scistory/text/document.hpp"
#include "scistory/text/tagger.hpp"

namespace scistory::text {

enum class InputFormat { plain, structured };

InputFormat input_format_from_string(std::string_view name);

struct DocumentMeta {
  std::string title;
  std::string pub_date;  // YYYY-MM-DD or empty
};

/// Builds the section/paragraph/sentence/token hierarchy.
///
/// Plain text splits paragraphs on blank lines; a block whose first line
/// looks like a heading (optional numbering plus a known section name, or a
/// short Title-Case line without a terminal period) opens a new section.
/// Structured input is the JSON object {title, pub_date, sections: [{title,
/// paragraphs: [string]}]}; non-empty `meta` fields override its title/date.
///
/// Throws Error{schema} naming the JSON path for malformed structured input,
/// Error{empty_document} when no paragraph text remains, and Error{metadata}
/// for a pub_date that is not a valid YYYY-MM-DD date.
Document parse_document(std::string_view raw, InputFormat format, const DocumentMeta& meta);
Document parse_document(std::string_view raw, InputFormat format, const DocumentMeta& meta,
                        const PosTagger& tagger);

// Drops control characters and collapses whitespace runs to one space.
std::string normalize_whitespace(std::string_view text);

// Heading recognition used by the plain-text parser. Returns the section
// kind when `line` is a heading.
std::optional<SectionKind> classify_heading(std::string_view line);
SectionKind section_kind_for_title(std::string_view title);

bool is_valid_date(std::string_view iso_date);

}  // namespace scistory::text
