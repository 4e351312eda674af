#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scistory::text {

// The Penn Treebank tagset, including punctuation tags.
bool is_penn_tag(std::string_view tag);

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  // One Penn tag per word, same length as `words`.
  virtual std::vector<std::string> tag(const std::vector<std::string>& words) const = 0;
};

/// Lexicon lookup with suffix rules for unknown words and a handful of
/// contextual fixes for words the lexicon lists with several tags.
///
/// Lexicon format: `word<TAB>tag` per line. A word may appear on several
/// lines; the first tag is its default.
class LexiconTagger final : public PosTagger {
 public:
  explicit LexiconTagger(std::string_view lexicon_tsv);
  static LexiconTagger from_file(const std::string& path);
  static const LexiconTagger& bundled();

  std::vector<std::string> tag(const std::vector<std::string>& words) const override;

  // Tags listed for `word` (exact, then lowercased), empty when unknown.
  const std::vector<std::string>* lookup(std::string_view word) const;
  std::size_t size() const noexcept { return lexicon_.size(); }

 private:
  std::string guess(const std::string& word, bool sentence_initial) const;
  std::string comparative_form(const std::string& lower) const;
  bool is_known_adjective(const std::string& lower) const;

  std::unordered_map<std::string, std::vector<std::string>> lexicon_;
};

}  // namespace scistory::text
