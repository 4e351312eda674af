#pragma once

// Brute-force references for the sequence miner: enumerate every
// subsequence of every database sequence and count distinct supporters.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "scistory/seqmine/sequence.hpp"

namespace scistory::testing {

using seqmine::ItemSeq;
using seqmine::ItemSet;

inline std::vector<ItemSet> nonempty_subsets(const ItemSet& set) {
  std::vector<ItemSet> out;
  const auto& syms = set.symbols();
  for (unsigned mask = 1; mask < (1u << syms.size()); ++mask) {
    std::vector<std::string> pick;
    for (std::size_t i = 0; i < syms.size(); ++i)
      if (mask & (1u << i)) pick.push_back(syms[i]);
    out.emplace_back(pick);
  }
  return out;
}

inline void enumerate_from(const ItemSeq& seq, std::size_t start, ItemSeq& current, std::set<ItemSeq>& out) {
  for (std::size_t i = start; i < seq.size(); ++i) {
    for (const auto& sub : nonempty_subsets(seq[i])) {
      current.push_back(sub);
      out.insert(current);
      enumerate_from(seq, i + 1, current, out);
      current.pop_back();
    }
  }
}

// All distinct non-empty subsequences of `seq`.
inline std::set<ItemSeq> all_subsequences(const ItemSeq& seq) {
  std::set<ItemSeq> out;
  ItemSeq current;
  enumerate_from(seq, 0, current, out);
  return out;
}

// Patterns supported by at least `percent`% of the database, as exact counts.
// Threshold test is integer: count * 100 >= percent * |db|.
inline std::map<ItemSeq, std::size_t> brute_force_frequent(const std::vector<ItemSeq>& db, unsigned percent) {
  std::map<ItemSeq, std::size_t> counts;
  for (const auto& seq : db)
    for (const auto& p : all_subsequences(seq)) ++counts[p];
  std::map<ItemSeq, std::size_t> out;
  for (const auto& [p, c] : counts)
    if (c * 100 >= percent * db.size() && c >= 1) out.emplace(p, c);
  return out;
}

// Backtracking containment check, written without the greedy shortcut.
inline bool naive_contains(const ItemSeq& seq, const ItemSeq& pattern, std::size_t si = 0, std::size_t pi = 0) {
  if (pi == pattern.size()) return true;
  for (std::size_t i = si; i < seq.size(); ++i) {
    bool subset = true;
    for (const auto& s : pattern[pi].symbols())
      if (!seq[i].contains(s)) subset = false;
    if (subset && naive_contains(seq, pattern, i + 1, pi + 1)) return true;
  }
  return false;
}

inline ItemSeq random_seq(std::mt19937_64& rng, std::size_t max_len, std::size_t alphabet, std::size_t max_set) {
  ItemSeq seq;
  const std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<std::string> syms;
    const std::size_t k = 1 + rng() % max_set;
    for (std::size_t j = 0; j < k; ++j) syms.push_back(std::string(1, static_cast<char>('a' + rng() % alphabet)));
    seq.emplace_back(syms);
  }
  return seq;
}

inline std::vector<ItemSeq> random_db(std::mt19937_64& rng, std::size_t max_seqs = 8, std::size_t max_len = 6,
                                      std::size_t alphabet = 5, std::size_t max_set = 2) {
  std::vector<ItemSeq> db;
  const std::size_t n = rng() % (max_seqs + 1);
  for (std::size_t i = 0; i < n; ++i) db.push_back(random_seq(rng, max_len, alphabet, max_set));
  return db;
}

}  // namespace scistory::testing
