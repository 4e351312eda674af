#include "scistory/text/document.hpp"

namespace scistory::text {

std::size_t Document::sentence_count() const noexcept {
  std::size_t n = 0;
  for (const auto& p : paragraphs) n += p.sentences.size();
  return n;
}

std::vector<const Sentence*> Document::sentences() const {
  std::vector<const Sentence*> out;
  out.reserve(sentence_count());
  for (const auto& p : paragraphs) {
    for (const auto& s : p.sentences) out.push_back(&s);
  }
  return out;
}

const Sentence* Document::find_sentence(std::size_t sentence_index) const noexcept {
  for (const auto& p : paragraphs) {
    if (p.sentences.empty()) continue;
    if (sentence_index < p.sentences.front().sentence_index) return nullptr;
    if (sentence_index <= p.sentences.back().sentence_index) {
      return &p.sentences[sentence_index - p.sentences.front().sentence_index];
    }
  }
  return nullptr;
}

std::size_t Document::section_of(std::size_t paragraph_index) const noexcept {
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (sections[i].contains(paragraph_index)) return i;
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace scistory::text
