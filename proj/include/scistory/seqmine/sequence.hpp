#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace scistory::seqmine {

using Symbol = std::string;

// Sorted, duplicate-free set of symbols.
class ItemSet {
 public:
  ItemSet() = default;
  ItemSet(std::initializer_list<Symbol> symbols);
  explicit ItemSet(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  bool contains(const Symbol& s) const;
  bool includes(const ItemSet& other) const;  // other ⊆ this
  const Symbol& back() const { return symbols_.back(); }

  void insert(Symbol s);

  auto operator<=>(const ItemSet&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

using ItemSeq = std::vector<ItemSet>;

// Throws Error{validation} for an empty itemset or empty symbol.
void validate(const ItemSeq& seq);

// True iff pattern's itemsets embed in order into seq, each as a subset.
// The empty pattern is contained in every sequence.
bool contains(const ItemSeq& seq, const ItemSeq& pattern);

std::string to_string(const ItemSeq& seq);  // "<{a}{b,c}>"

}  // namespace scistory::seqmine
