#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scistory::comparative {

enum class KeywordCategory { adjectival_adverbial, single_verb, phrase, other };

std::string_view to_string(KeywordCategory c) noexcept;
KeywordCategory keyword_category_from_string(std::string_view name);

struct KeywordEntry {
  KeywordCategory category = KeywordCategory::other;
  // Normalized form: space-joined stems, or "POS:<tag>" for a POS class.
  std::string form;

  bool is_pos_class() const noexcept { return form.starts_with("POS:"); }
  std::string_view pos_class() const noexcept { return std::string_view(form).substr(4); }
  // Stems of the form; empty for POS classes.
  std::vector<std::string> stems() const;

  bool operator==(const KeywordEntry&) const = default;
};

/// Keyword list used to find comparative-sentence candidates.
///
/// File format: `category<TAB>form` per line, '#' comments. Word forms are
/// lowercased and stemmed word by word; POS classes are written POS:JJR,
/// POS:JJS, POS:RBR or POS:RBS. Duplicate normalized forms, unknown
/// categories or POS classes, and a list lacking any of fail, gain, over and
/// contrast raise Error{validation}.
class KeywordLexicon {
 public:
  KeywordLexicon() = default;

  static KeywordLexicon parse(std::string_view tsv);
  static KeywordLexicon from_file(const std::string& path);
  static const KeywordLexicon& bundled();
  // Entries already normalized (as stored in a model file); not re-stemmed.
  static KeywordLexicon from_entries(std::vector<KeywordEntry> entries);

  const std::vector<KeywordEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::optional<std::size_t> find(std::string_view normalized_form) const;

  bool operator==(const KeywordLexicon&) const = default;

 private:
  std::vector<KeywordEntry> entries_;
};

// Lowercase + stem each whitespace-separated word.
std::string normalize_keyword_form(std::string_view form);

}  // namespace scistory::comparative
