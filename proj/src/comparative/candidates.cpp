#include "scistory/comparative/candidates.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "scistory/error.hpp"

namespace scistory::comparative {

std::string_view to_string(Label l) noexcept {
  return l == Label::comparative ? "comparative" : "non_comparative";
}

Label label_from_string(std::string_view name) {
  if (name == "comparative" || name == "comp") return Label::comparative;
  if (name == "non_comparative" || name == "noncomp") return Label::non_comparative;
  throw Error(ErrorCode::parse, "unknown label '" + std::string(name) + "'");
}

std::vector<KeywordMatch> match_keywords(const std::vector<text::Token>& tokens, const KeywordLexicon& lexicon) {
  const auto& entries = lexicon.entries();
  std::vector<std::size_t> phrases;
  std::unordered_map<std::string, std::size_t> singles;
  std::unordered_map<std::string, std::size_t> pos_classes;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].is_pos_class()) {
      pos_classes.emplace(std::string(entries[i].pos_class()), i);
    } else if (entries[i].stems().size() > 1) {
      phrases.push_back(i);
    } else {
      singles.emplace(entries[i].form, i);
    }
  }
  // Longest phrases first so the greedy scan prefers them.
  std::stable_sort(phrases.begin(), phrases.end(), [&](std::size_t a, std::size_t b) {
    return entries[a].stems().size() > entries[b].stems().size();
  });

  std::vector<KeywordMatch> matches;
  std::vector<bool> taken(tokens.size(), false);
  for (std::size_t t = 0; t < tokens.size();) {
    bool matched = false;
    for (std::size_t idx : phrases) {
      const auto stems = entries[idx].stems();
      if (t + stems.size() > tokens.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < stems.size() && ok; ++k) ok = tokens[t + k].stem == stems[k];
      if (!ok) continue;
      matches.push_back({idx, t, t + stems.size()});
      std::fill(taken.begin() + static_cast<std::ptrdiff_t>(t),
                taken.begin() + static_cast<std::ptrdiff_t>(t + stems.size()), true);
      t += stems.size();
      matched = true;
      break;
    }
    if (!matched) ++t;
  }
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (taken[t]) continue;
    if (auto it = singles.find(tokens[t].stem); it != singles.end()) {
      matches.push_back({it->second, t, t + 1});
    } else if (auto pit = pos_classes.find(tokens[t].pos); pit != pos_classes.end()) {
      matches.push_back({pit->second, t, t + 1});
    }
  }
  std::sort(matches.begin(), matches.end(),
            [](const KeywordMatch& a, const KeywordMatch& b) { return a.token_start < b.token_start; });
  return matches;
}

CandidateSequence extract_candidate(const std::vector<text::Token>& tokens, const KeywordMatch& match,
                                    const KeywordLexicon& lexicon, int radius) {
  if (radius < 0) throw Error(ErrorCode::parameter, "radius must be non-negative");
  if (match.token_start >= match.token_end || match.token_end > tokens.size() ||
      match.entry_index >= lexicon.size())
    throw Error(ErrorCode::range, "keyword match outside the sentence");
  const auto r = static_cast<std::size_t>(radius);
  const auto& entry = lexicon.entries()[match.entry_index];

  CandidateSequence c;
  c.entry_index = match.entry_index;
  const std::size_t begin = match.token_start > r ? match.token_start - r : 0;
  for (std::size_t t = begin; t < match.token_start; ++t) c.items.push_back(seqmine::ItemSet{tokens[t].pos});
  c.keyword_position = c.items.size();
  const auto& head = tokens[match.token_start];
  const std::string keyword = match.token_end - match.token_start > 1 || !entry.is_pos_class() ? entry.form : head.stem;
  c.items.push_back(seqmine::ItemSet{keyword, head.pos});
  const std::size_t end = std::min(tokens.size(), match.token_end + r);
  for (std::size_t t = match.token_end; t < end; ++t) c.items.push_back(seqmine::ItemSet{tokens[t].pos});
  return c;
}

std::vector<CandidateSequence> extract_candidates(const std::vector<text::Token>& tokens,
                                                  const KeywordLexicon& lexicon, int radius) {
  std::vector<CandidateSequence> out;
  for (const auto& m : match_keywords(tokens, lexicon)) out.push_back(extract_candidate(tokens, m, lexicon, radius));
  return out;
}

}  // namespace scistory::comparative
