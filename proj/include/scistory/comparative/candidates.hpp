#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "scistory/comparative/lexicon.hpp"
#include "scistory/seqmine/sequence.hpp"
#include "scistory/text/document.hpp"

namespace scistory::comparative {

enum class Label { comparative, non_comparative };

std::string_view to_string(Label l) noexcept;
Label label_from_string(std::string_view name);  // also accepts "comp"/"noncomp"

struct KeywordMatch {
  std::size_t entry_index = 0;
  std::size_t token_start = 0;  // [token_start, token_end)
  std::size_t token_end = 0;

  bool operator==(const KeywordMatch&) const = default;
};

struct CandidateSequence {
  seqmine::ItemSeq items;
  std::size_t keyword_position = 0;
  std::size_t sentence_index = 0;
  std::size_t entry_index = 0;
  std::optional<Label> label;

  bool operator==(const CandidateSequence&) const = default;
};

inline constexpr int kDefaultRadius = 3;

/// Non-overlapping keyword occurrences, left to right. Multi-word entries are
/// matched first (longest entry wins at a position); remaining tokens are
/// then matched against single-stem entries, and last against POS classes.
std::vector<KeywordMatch> match_keywords(const std::vector<text::Token>& tokens, const KeywordLexicon& lexicon);

/// POS tags of up to `radius` tokens on each side of the match, around a
/// keyword itemset {keyword, POS}. For a phrase the keyword symbol is the
/// entry form and the POS is that of its first token.
CandidateSequence extract_candidate(const std::vector<text::Token>& tokens, const KeywordMatch& match,
                                    const KeywordLexicon& lexicon, int radius = kDefaultRadius);

// All candidates of one sentence.
std::vector<CandidateSequence> extract_candidates(const std::vector<text::Token>& tokens,
                                                  const KeywordLexicon& lexicon, int radius = kDefaultRadius);

}  // namespace scistory::comparative
