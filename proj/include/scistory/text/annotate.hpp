#pragma once

#include <string_view>
#include <vector>

#include "scistory/text/document.hpp"
#include "scistory/text/segmenter.hpp"
#include "scistory/text/tagger.hpp"

namespace scistory::text {

// Word and punctuation units of a sentence, offsets in scalars. Words keep
// internal hyphens and apostrophes, digits keep internal '.' and ',', and a
// bundled single-word abbreviation ("Fig.", "e.g.") stays one token.
std::vector<Span> tokenize(std::u32string_view sentence,
                           const AbbreviationList& abbreviations = AbbreviationList::bundled());

// Tokenize, tag and stem. Deterministic; the bundled tagger is used unless
// another one is supplied.
std::vector<Token> annotate(std::string_view sentence_text);
std::vector<Token> annotate(std::string_view sentence_text, const PosTagger& tagger);

}  // namespace scistory::text
