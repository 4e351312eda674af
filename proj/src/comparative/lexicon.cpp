#include "scistory/comparative/lexicon.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_set>

#include "scistory/error.hpp"
#include "scistory/resources.hpp"
#include "scistory/text/porter.hpp"

namespace scistory::comparative {
namespace {

constexpr std::array<std::string_view, 4> kCategoryNames = {"adjectival_adverbial", "single_verb", "phrase",
                                                            "other"};
constexpr std::array<std::string_view, 4> kPosClasses = {"JJR", "JJS", "RBR", "RBS"};
constexpr std::array<std::string_view, 4> kRequiredForms = {"fail", "gain", "over", "contrast"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

void check(const std::vector<KeywordEntry>& entries) {
  std::unordered_set<std::string> seen;
  for (const auto& e : entries) {
    if (e.form.empty()) throw Error(ErrorCode::validation, "keyword lexicon: empty form");
    if (e.is_pos_class() &&
        std::find(kPosClasses.begin(), kPosClasses.end(), e.pos_class()) == kPosClasses.end())
      throw Error(ErrorCode::validation, "keyword lexicon: unsupported POS class '" + e.form + "'");
    if (!seen.insert(e.form).second)
      throw Error(ErrorCode::validation, "keyword lexicon: duplicate form '" + e.form + "'");
  }
  for (auto required : kRequiredForms) {
    if (!seen.count(normalize_keyword_form(required)))
      throw Error(ErrorCode::validation, "keyword lexicon: missing required keyword '" + std::string(required) + "'");
  }
}

}  // namespace

std::string_view to_string(KeywordCategory c) noexcept { return kCategoryNames[static_cast<std::size_t>(c)]; }

KeywordCategory keyword_category_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i)
    if (kCategoryNames[i] == name) return static_cast<KeywordCategory>(i);
  throw Error(ErrorCode::validation, "unknown keyword category '" + std::string(name) + "'");
}

std::vector<std::string> KeywordEntry::stems() const {
  std::vector<std::string> out;
  if (is_pos_class()) return out;
  std::istringstream in(form);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string normalize_keyword_form(std::string_view form) {
  std::istringstream in{std::string(form)};
  std::string word;
  std::string out;
  while (in >> word) {
    if (!out.empty()) out += ' ';
    out += text::stem(word);
  }
  return out;
}

KeywordLexicon KeywordLexicon::parse(std::string_view tsv) {
  std::vector<KeywordEntry> entries;
  std::istringstream in{std::string(tsv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto tab = content.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorCode::validation, "keyword lexicon line " + std::to_string(line_no) + ": expected category<TAB>form");
    KeywordEntry e;
    e.category = keyword_category_from_string(trim(content.substr(0, tab)));
    const auto form = trim(content.substr(tab + 1));
    if (form.starts_with("POS:")) {
      e.form = form;
    } else {
      e.form = normalize_keyword_form(form);
    }
    entries.push_back(std::move(e));
  }
  return from_entries(std::move(entries));
}

KeywordLexicon KeywordLexicon::from_file(const std::string& path) { return parse(resources::read_file(path)); }

const KeywordLexicon& KeywordLexicon::bundled() {
  static const KeywordLexicon lexicon = parse(resources::comparative_keywords());
  return lexicon;
}

KeywordLexicon KeywordLexicon::from_entries(std::vector<KeywordEntry> entries) {
  check(entries);
  KeywordLexicon lex;
  lex.entries_ = std::move(entries);
  return lex;
}

std::optional<std::size_t> KeywordLexicon::find(std::string_view normalized_form) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].form == normalized_form) return i;
  return std::nullopt;
}

}  // namespace scistory::comparative
