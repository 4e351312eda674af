#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scistory/seqmine/sequence.hpp"

namespace scistory::seqmine {

struct FrequentPattern {
  ItemSeq pattern;
  std::size_t support_count = 0;
  double support_ratio = 0.0;  // support_count / |db|

  bool operator==(const FrequentPattern&) const = default;
};

struct MiningOptions {
  double min_support_ratio = 0.1;
  // Longest pattern, in itemsets; unbounded when empty.
  std::optional<std::size_t> max_itemsets;
};

// ceil(ratio * n) with a floor of 1; tolerant of binary rounding, so
// 0.1 * 30 yields 3, not 4.
std::size_t absolute_support(double ratio, std::size_t db_size);

/// PrefixSpan over sequences of itemsets (Pei, Han et al.), with both
/// sequence-extensions and itemset-extensions.
///
/// Returns every pattern contained in at least absolute_support() sequences
/// with its exact count, ordered by itemset count and then lexicographically.
/// Throws Error{parameter} when min_support_ratio is outside (0, 1].
std::vector<FrequentPattern> prefixspan(const std::vector<ItemSeq>& db, const MiningOptions& options);
std::vector<FrequentPattern> prefixspan(const std::vector<ItemSeq>& db, double min_support_ratio);

// The output ordering used by prefixspan().
bool pattern_less(const ItemSeq& a, const ItemSeq& b);

}  // namespace scistory::seqmine
