#include "scistory/seqmine/prefixspan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "scistory/error.hpp"

namespace scistory::seqmine {
namespace {

constexpr std::ptrdiff_t kNone = -1;

// One database sequence that contains the current prefix. `end_full` is the
// earliest position at which the whole prefix can end; `end_prev` is the
// earliest end of the prefix without its last itemset.
struct Projection {
  std::size_t seq = 0;
  std::ptrdiff_t end_prev = kNone;
  std::ptrdiff_t end_full = kNone;
};

class Miner {
 public:
  Miner(const std::vector<ItemSeq>& db, std::size_t min_count, std::optional<std::size_t> cap)
      : db_(db), min_count_(min_count), cap_(cap) {}

  std::vector<FrequentPattern> run() {
    // Seed with single-symbol patterns.
    std::map<Symbol, std::vector<Projection>> seeds;
    for (std::size_t s = 0; s < db_.size(); ++s) {
      std::set<Symbol> seen;
      for (std::size_t q = 0; q < db_[s].size(); ++q)
        for (const auto& x : db_[s][q].symbols())
          if (seen.insert(x).second)
            seeds[x].push_back({s, kNone, static_cast<std::ptrdiff_t>(q)});
    }
    if (!cap_ || *cap_ >= 1) {
      for (auto& [x, proj] : seeds) {
        if (proj.size() < min_count_) continue;
        ItemSeq pattern{ItemSet{x}};
        grow(pattern, proj);
      }
    }
    std::sort(out_.begin(), out_.end(),
              [](const FrequentPattern& a, const FrequentPattern& b) { return pattern_less(a.pattern, b.pattern); });
    return std::move(out_);
  }

 private:
  void grow(ItemSeq& pattern, const std::vector<Projection>& proj) {
    out_.push_back({pattern, proj.size(), static_cast<double>(proj.size()) / static_cast<double>(db_.size())});

    // Itemset-extensions: add x > max(last) to the last itemset.
    const ItemSet last = pattern.back();
    std::map<Symbol, std::vector<Projection>> iext;
    for (const auto& p : proj) {
      const ItemSeq& seq = db_[p.seq];
      std::set<Symbol> seen;
      for (auto q = static_cast<std::size_t>(p.end_prev + 1); q < seq.size(); ++q) {
        if (!seq[q].includes(last)) continue;
        for (const auto& x : seq[q].symbols()) {
          if (x <= last.back() || !seen.insert(x).second) continue;
          iext[x].push_back({p.seq, p.end_prev, static_cast<std::ptrdiff_t>(q)});
        }
      }
    }
    for (auto& [x, next] : iext) {
      if (next.size() < min_count_) continue;
      pattern.back().insert(x);
      grow(pattern, next);
      pattern.back() = last;
    }

    // Sequence-extensions: append {x} after the prefix.
    if (cap_ && pattern.size() >= *cap_) return;
    std::map<Symbol, std::vector<Projection>> sext;
    for (const auto& p : proj) {
      const ItemSeq& seq = db_[p.seq];
      std::set<Symbol> seen;
      for (auto q = static_cast<std::size_t>(p.end_full + 1); q < seq.size(); ++q)
        for (const auto& x : seq[q].symbols())
          if (seen.insert(x).second) sext[x].push_back({p.seq, p.end_full, static_cast<std::ptrdiff_t>(q)});
    }
    for (auto& [x, next] : sext) {
      if (next.size() < min_count_) continue;
      pattern.push_back(ItemSet{x});
      grow(pattern, next);
      pattern.pop_back();
    }
  }

  const std::vector<ItemSeq>& db_;
  std::size_t min_count_;
  std::optional<std::size_t> cap_;
  std::vector<FrequentPattern> out_;
};

}  // namespace

std::size_t absolute_support(double ratio, std::size_t db_size) {
  const double raw = std::ceil(ratio * static_cast<double>(db_size) - 1e-9);
  return std::max<std::size_t>(1, raw > 0 ? static_cast<std::size_t>(raw) : 0);
}

bool pattern_less(const ItemSeq& a, const ItemSeq& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<FrequentPattern> prefixspan(const std::vector<ItemSeq>& db, const MiningOptions& options) {
  const double r = options.min_support_ratio;
  if (!(r > 0.0 && r <= 1.0))
    throw Error(ErrorCode::parameter, "min_support_ratio must be in (0, 1], got " + std::to_string(r));
  if (db.empty()) return {};
  for (const auto& seq : db) validate(seq);
  return Miner(db, absolute_support(r, db.size()), options.max_itemsets).run();
}

std::vector<FrequentPattern> prefixspan(const std::vector<ItemSeq>& db, double min_support_ratio) {
  return prefixspan(db, MiningOptions{min_support_ratio, std::nullopt});
}

}  // namespace scistory::seqmine
