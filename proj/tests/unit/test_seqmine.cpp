#include <random>

#include "doctest.h"
#include "scistory/error.hpp"
#include "scistory/seqmine/prefixspan.hpp"
#include "seq_oracle.hpp"

using namespace scistory;
using namespace scistory::seqmine;

namespace {

std::map<ItemSeq, std::size_t> as_map(const std::vector<FrequentPattern>& patterns) {
  std::map<ItemSeq, std::size_t> out;
  for (const auto& p : patterns) out.emplace(p.pattern, p.support_count);
  return out;
}

}  // namespace

TEST_SUITE("seqmine") {

TEST_CASE("itemset normalizes order and duplicates") {
  const ItemSet s{"b", "a", "b"};
  CHECK(s.symbols() == std::vector<std::string>{"a", "b"});
  CHECK(s.includes(ItemSet{"a"}));
  CHECK_FALSE(ItemSet{"a"}.includes(s));
  ItemSet t{"c"};
  t.insert("a");
  t.insert("c");
  CHECK(t.symbols() == std::vector<std::string>{"a", "c"});
  CHECK(to_string({ItemSet{"a"}, ItemSet{"c", "b"}}) == "<{a}{b,c}>");
}

TEST_CASE("contains examples") {
  const ItemSeq seq{{"NN"}, {"VBZ", "outperform"}, {"NN"}};
  CHECK(contains(seq, {{"outperform"}}));
  CHECK(contains(seq, {{"NN"}, {"outperform", "VBZ"}, {"NN"}}));
  CHECK_FALSE(contains({{"a"}, {"b"}}, {{"b"}, {"a"}}));
  CHECK(contains(seq, {}));
  CHECK(contains({}, {}));
  CHECK_FALSE(contains({}, {{"a"}}));
  CHECK_FALSE(contains({{"a"}, {"b"}}, {{"a", "b"}}));
}

TEST_CASE("contains agrees with backtracking matcher") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto seq = testing::random_seq(rng, 6, 4, 2);
    const auto pattern = testing::random_seq(rng, 3, 4, 2);
    CHECK(contains(seq, pattern) == testing::naive_contains(seq, pattern));
  }
}

TEST_CASE("prefixspan on a small database") {
  const std::vector<ItemSeq> db{{{"a"}, {"b"}}, {{"a"}, {"b"}}, {{"a"}, {"c"}}};
  const auto result = prefixspan(db, 0.6);
  const std::map<ItemSeq, std::size_t> expected{{{{"a"}}, 3}, {{{"b"}}, 2}, {{{"a"}, {"b"}}, 2}};
  CHECK(as_map(result) == expected);
  REQUIRE(result.size() == 3);
  CHECK(result[0].pattern == ItemSeq{{"a"}});
  CHECK(result[0].support_ratio == doctest::Approx(1.0));
  CHECK(result[2].pattern == ItemSeq{{"a"}, {"b"}});
  CHECK(result[2].support_ratio == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("prefixspan trivial cases") {
  CHECK(prefixspan({}, 0.5).empty());
  CHECK(prefixspan({{{"a"}}, {{"b"}}}, 1.0).empty());
}

TEST_CASE("prefixspan rejects bad ratios") {
  for (double r : {0.0, -0.1, 1.0001, std::nan("")}) {
    try {
      prefixspan({{{"a"}}}, r);
      FAIL("expected parameter error for " << r);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::parameter);
    }
  }
}

TEST_CASE("prefixspan rejects malformed sequences") {
  CHECK_THROWS_AS(prefixspan({{ItemSet{}}}, 0.5), Error);
  CHECK_THROWS_AS(prefixspan({{ItemSet{""}}}, 0.5), Error);
}

TEST_CASE("absolute support threshold") {
  CHECK(absolute_support(0.1, 30) == 3);
  CHECK(absolute_support(0.1, 31) == 4);
  CHECK(absolute_support(0.6, 3) == 2);
  CHECK(absolute_support(0.01, 5) == 1);
  CHECK(absolute_support(1.0, 7) == 7);
  for (std::size_t n = 1; n <= 200; ++n)
    for (unsigned pct = 1; pct <= 100; ++pct)
      CHECK(absolute_support(pct / 100.0, n) == (pct * n + 99) / 100);
}

TEST_CASE("itemset extensions are found") {
  const std::vector<ItemSeq> db{{{"a", "b"}, {"c"}}, {{"a", "b", "c"}}, {{"a"}, {"b"}}};
  const auto got = as_map(prefixspan(db, 0.6));
  CHECK(got.at({{"a", "b"}}) == 2);
  CHECK(got.count({{"a", "b"}, {"c"}}) == 0);
  CHECK(got == testing::brute_force_frequent(db, 60));
}

TEST_CASE("prefixspan equals brute-force enumeration") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 300; ++round) {
    const auto db = testing::random_db(rng);
    const unsigned pct = 10 + static_cast<unsigned>(rng() % 91);
    const auto got = prefixspan(db, pct / 100.0);
    REQUIRE(as_map(got) == testing::brute_force_frequent(db, pct));
    for (const auto& fp : got)
      CHECK(fp.support_ratio == doctest::Approx(static_cast<double>(fp.support_count) / db.size()));
  }
}

TEST_CASE("output is sorted and anti-monotone") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 100; ++round) {
    const auto db = testing::random_db(rng);
    const auto got = prefixspan(db, 0.2);
    const auto by_pattern = as_map(got);
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(pattern_less(got[i - 1].pattern, got[i].pattern));
    for (const auto& fp : got) {
      if (fp.pattern.size() < 2) continue;
      ItemSeq prefix(fp.pattern.begin(), fp.pattern.end() - 1);
      REQUIRE(by_pattern.count(prefix) == 1);
      CHECK(by_pattern.at(prefix) >= fp.support_count);
    }
  }
}

TEST_CASE("length cap limits itemset count") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    const auto db = testing::random_db(rng);
    const auto capped = prefixspan(db, MiningOptions{0.2, 2});
    std::vector<FrequentPattern> expected;
    for (const auto& fp : prefixspan(db, 0.2))
      if (fp.pattern.size() <= 2) expected.push_back(fp);
    CHECK(capped == expected);
  }
}

TEST_CASE("mining is deterministic") {
  std::mt19937_64 rng(3);
  const auto db = testing::random_db(rng, 8, 6, 5, 2);
  CHECK(prefixspan(db, 0.25) == prefixspan(db, 0.25));
}

}  // TEST_SUITE
