#include "scistory/seqmine/sequence.hpp"

#include <algorithm>

#include "scistory/error.hpp"

namespace scistory::seqmine {

ItemSet::ItemSet(std::initializer_list<Symbol> symbols) : ItemSet(std::vector<Symbol>(symbols)) {}

ItemSet::ItemSet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::sort(symbols_.begin(), symbols_.end());
  symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());
}

bool ItemSet::contains(const Symbol& s) const {
  return std::binary_search(symbols_.begin(), symbols_.end(), s);
}

bool ItemSet::includes(const ItemSet& other) const {
  return std::includes(symbols_.begin(), symbols_.end(), other.symbols_.begin(), other.symbols_.end());
}

void ItemSet::insert(Symbol s) {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), s);
  if (it == symbols_.end() || *it != s) symbols_.insert(it, std::move(s));
}

void validate(const ItemSeq& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].empty()) throw Error(ErrorCode::validation, "itemset " + std::to_string(i) + " is empty");
    for (const auto& s : seq[i].symbols())
      if (s.empty()) throw Error(ErrorCode::validation, "itemset " + std::to_string(i) + " has an empty symbol");
  }
}

bool contains(const ItemSeq& seq, const ItemSeq& pattern) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < seq.size() && j < pattern.size(); ++i)
    if (seq[i].includes(pattern[j])) ++j;
  return j == pattern.size();
}

std::string to_string(const ItemSeq& seq) {
  std::string out = "<";
  for (const auto& set : seq) {
    out += '{';
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) out += ',';
      out += set.symbols()[i];
    }
    out += '}';
  }
  out += '>';
  return out;
}

}  // namespace scistory::seqmine
