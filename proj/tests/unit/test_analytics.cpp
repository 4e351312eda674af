#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "graph_oracle.hpp"
#include "scistory/analytics/graph.hpp"
#include "scistory/error.hpp"

using namespace scistory;
using namespace scistory::analytics;
using entities::EntityMention;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::io;
}

EntityMention at(const std::string& id, std::size_t sentence, std::size_t paragraph = 0) {
  return {id, paragraph, sentence, 0, 1, id};
}

CoocGraph graph(std::vector<std::string> ids, const std::vector<std::tuple<std::string, std::string, double>>& edges) {
  std::vector<GraphNode> nodes;
  for (auto& id : ids) nodes.push_back({id, 1.0});
  return CoocGraph(nodes, edges);
}

CoocGraph two_triangles() {
  return graph({"a", "b", "c", "d", "e", "f"},
               {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}, {"d", "e", 1}, {"e", "f", 1}, {"d", "f", 1}});
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("cooccurrence examples") {
  const auto tri = cooccurrence({at("A", 0), at("B", 0), at("C", 0)}, Level::sentence);
  CHECK(tri.edges().size() == 3);
  for (const auto& e : tri.edges()) CHECK(e.weight == 1.0);

  std::vector<EntityMention> three;
  for (std::size_t s = 0; s < 3; ++s) {
    three.push_back(at("A", s));
    three.push_back(at("B", s));
  }
  CHECK(cooccurrence(three, Level::sentence).weight("A", "B") == 3.0);

  const auto dedup = cooccurrence({at("A", 0), at("A", 0), at("B", 0)}, Level::sentence);
  CHECK(dedup.weight("A", "B") == 1.0);
  CHECK(dedup.nodes()[0].weight == 2.0);
}

TEST_CASE("cooccurrence symmetry and level monotonicity") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 50; ++round) {
    std::vector<EntityMention> ms;
    std::size_t sentence = 0;
    for (std::size_t p = 0; p < 4; ++p) {
      const auto sents = 1 + rng() % 4;
      for (std::size_t s = 0; s < sents; ++s, ++sentence) {
        const auto k = rng() % 4;
        for (std::size_t i = 0; i < k; ++i) ms.push_back(at(std::string(1, static_cast<char>('A' + rng() % 6)), sentence, p));
      }
    }
    const auto sg = cooccurrence(ms, Level::sentence);
    const auto pg = cooccurrence(ms, Level::paragraph);
    CHECK(pg.level() == Level::paragraph);
    // Paragraph weight counts paragraphs, so it bounds from above the number
    // of distinct paragraphs holding a sentence where the pair co-occurs.
    for (const auto& a : sg.nodes())
      for (const auto& b : sg.nodes()) {
        if (a.id == b.id) continue;
        CHECK(sg.weight(a.id, b.id) == sg.weight(b.id, a.id));
        std::set<std::size_t> paragraphs;
        for (std::size_t s = 0; s < sentence; ++s) {
          bool has_a = false, has_b = false;
          std::size_t para = 0;
          for (const auto& m : ms)
            if (m.sentence_index == s) {
              has_a |= m.entity_id == a.id;
              has_b |= m.entity_id == b.id;
              para = m.paragraph_index;
            }
          if (has_a && has_b) paragraphs.insert(para);
        }
        CHECK(pg.weight(a.id, b.id) >= static_cast<double>(paragraphs.size()));
        CHECK((sg.weight(a.id, b.id) > 0) == !paragraphs.empty());
      }
    for (const auto& e : sg.edges()) {
      CHECK(e.a < e.b);
      CHECK(e.weight >= 1.0);
    }
  }
}

TEST_CASE("graph construction validation") {
  CHECK(code_of([] { graph({"a"}, {{"a", "a", 1}}); }) == ErrorCode::validation);
  CHECK(code_of([] { graph({"a"}, {{"a", "b", 1}}); }) == ErrorCode::validation);
  CHECK(code_of([] { graph({"a", "b"}, {{"a", "b", 0}}); }) == ErrorCode::validation);
  CHECK(graph({"a", "b"}, {{"a", "b", 1}, {"b", "a", 2}}).weight("a", "b") == 3.0);
}

TEST_CASE("modularity examples") {
  const auto edge = graph({"a", "b"}, {{"a", "b", 1}});
  CHECK(modularity(edge, {{"a", 0}, {"b", 0}}) == doctest::Approx(0.0));
  const auto two = graph({"a", "b", "c", "d"}, {{"a", "b", 1}, {"c", "d", 1}});
  CHECK(std::abs(modularity(two, {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}}) - 0.5) < 1e-12);
  // Singletons: Q = -sum (k_i / 2m)^2.
  const auto g = graph({"a", "b", "c"}, {{"a", "b", 2}, {"b", "c", 1}});
  const double expected = -((2.0 / 6) * (2.0 / 6) + (3.0 / 6) * (3.0 / 6) + (1.0 / 6) * (1.0 / 6));
  CHECK(std::abs(modularity(g, {{"a", 0}, {"b", 1}, {"c", 2}}) - expected) < 1e-12);

  CHECK(code_of([] { modularity(graph({"a"}, {}), {{"a", 0}}); }) == ErrorCode::undefined_modularity);
  CHECK(code_of([] { modularity(CoocGraph{}, {}); }) == ErrorCode::undefined_modularity);
  CHECK(code_of([&] { modularity(edge, {{"a", 0}}); }) == ErrorCode::validation);
}

TEST_CASE("modularity agrees with the double-sum definition") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    const auto g = testing::random_graph(rng, 8, round % 2 == 0);
    Partition p;
    std::vector<std::size_t> v;
    for (const auto& n : g.nodes()) {
      v.push_back(rng() % 3);
      p[n.id] = v.back();
    }
    CHECK(std::abs(modularity(g, p) - testing::modularity_by_definition(g, v)) < 1e-9);
  }
}

TEST_CASE("louvain examples") {
  const auto g = two_triangles();
  const auto p = louvain(g);
  CHECK(p.at("a") == p.at("b"));
  CHECK(p.at("b") == p.at("c"));
  CHECK(p.at("d") == p.at("e"));
  CHECK(p.at("e") == p.at("f"));
  CHECK(p.at("a") != p.at("d"));
  CHECK(p.at("a") == 0);
  CHECK(std::abs(modularity(g, p) - testing::brute_force_max_modularity(g)) < 1e-12);

  const auto single = louvain(graph({"x"}, {}));
  CHECK(single == Partition{{"x", 0}});

  const auto k4 = graph({"a", "b", "c", "d"},
                        {{"a", "b", 1}, {"a", "c", 1}, {"a", "d", 1}, {"b", "c", 1}, {"b", "d", 1}, {"c", "d", 1}});
  const auto pk = louvain(k4);
  for (const auto& [id, c] : pk) CHECK(c == 0);
  CHECK(std::abs(modularity(k4, pk) - testing::brute_force_max_modularity(k4)) < 1e-12);

  CHECK(code_of([] { louvain(CoocGraph{}); }) == ErrorCode::validation);
}

TEST_CASE("louvain on edgeless graphs gives singletons") {
  const auto p = louvain(graph({"c", "a", "b"}, {}));
  CHECK(p == Partition{{"a", 0}, {"b", 1}, {"c", 2}});
}

TEST_CASE("isolated nodes stay alone") {
  const auto g = graph({"a", "b", "c", "z"}, {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}});
  const auto p = louvain(g);
  CHECK(p.at("z") != p.at("a"));
  CHECK(p.at("a") == p.at("c"));
}

TEST_CASE("louvain partitions are dense, deterministic and beat trivial partitions") {
  std::mt19937_64 rng(123);
  for (int round = 0; round < 100; ++round) {
    const auto g = testing::random_graph(rng, 12, round % 3 != 0);
    const auto p = louvain(g);
    CHECK(p == louvain(g));
    std::size_t max_c = 0;
    std::vector<bool> used(g.nodes().size(), false);
    for (const auto& [id, c] : p) {
      REQUIRE(c < g.nodes().size());
      used[c] = true;
      max_c = std::max(max_c, c);
    }
    for (std::size_t c = 0; c <= max_c; ++c) CHECK(used[c]);
    Partition singletons, one;
    std::size_t i = 0;
    for (const auto& n : g.nodes()) {
      singletons[n.id] = i++;
      one[n.id] = 0;
    }
    const double q = modularity(g, p);
    CHECK(q >= modularity(g, singletons) - 1e-12);
    CHECK(q >= modularity(g, one) - 1e-12);
  }
}

TEST_CASE("frequency ranking") {
  entities::EntityTable t;
  t.entities = {{"e1", "E1", 3, 4, {}}, {"e2", "E2", 1, 0, {}}, {"e3", "E3", 1, 2, {}}};
  const auto rows = frequency_ranking(t);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].id == "e1");
  CHECK(rows[1].id == "e2");
  CHECK(rows[2].id == "e3");
  CHECK(frequency_ranking(t, 1).size() == 1);
  CHECK(frequency_ranking(t, 10).size() == 3);
}

TEST_CASE("evolution examples") {
  const DocEntities d1{"D1", "1999-01-01", {at("lsi", 0)}, {{"lsi", "LSI"}}};
  const DocEntities d2{"D2", "2003-01-01", {at("lsi", 0), at("lda", 0)}, {{"lsi", "LSI"}, {"lda", "LDA"}}};
  const auto ev = evolution({d2, d1});
  REQUIRE(ev.nodes.size() == 2);
  CHECK(ev.nodes[0].id == "lsi");
  CHECK(ev.nodes[0].origin_doc_id == "D1");
  CHECK(ev.nodes[1].id == "lda");
  CHECK(ev.nodes[1].x_rank == 1);
  REQUIRE(ev.arcs.size() == 1);
  CHECK(ev.arcs[0].weight == 1.0);

  const DocEntities a{"A", "2001-05-05", {at("x", 0), at("y", 0), at("x", 1), at("y", 1)}, {}};
  const DocEntities b{"B", "2002-05-05", {at("x", 3), at("y", 3)}, {}};
  const auto agg = evolution({a, b});
  REQUIRE(agg.arcs.size() == 1);
  CHECK(agg.arcs[0].weight == 3.0);

  CHECK(code_of([] { evolution({DocEntities{"X", "", {at("x", 0)}, {}}}); }) == ErrorCode::metadata);
  CHECK(code_of([] { evolution({DocEntities{"X", "2001-13-01", {}, {}}}); }) == ErrorCode::metadata);
}

TEST_CASE("evolution ordering ties and determinism") {
  const DocEntities a{"B-doc", "2000-01-01", {at("z", 0), at("m", 0)}, {{"z", "Alpha"}, {"m", "Beta"}}};
  const DocEntities b{"A-doc", "2000-01-01", {at("q", 0)}, {{"q", "Zeta"}}};
  const auto ev = evolution({a, b});
  REQUIRE(ev.nodes.size() == 3);
  CHECK(ev.nodes[0].id == "q");  // same date, doc id A-doc first
  CHECK(ev.nodes[1].id == "z");  // then canonical name order
  CHECK(ev.nodes[2].id == "m");
  CHECK(ev == evolution({a, b}));
  for (std::size_t i = 1; i < ev.nodes.size(); ++i) CHECK(ev.nodes[i - 1].origin_date <= ev.nodes[i].origin_date);
}

TEST_CASE("graph JSON") {
  const auto g = two_triangles();
  const auto j = graph_to_json(g, louvain(g), {{"a", "Alpha"}});
  CHECK(j["level"] == "sentence");
  CHECK(j["nodes"].size() == 6);
  CHECK(j["nodes"][0]["label"] == "Alpha");
  CHECK(j["nodes"][1]["label"] == "b");
  CHECK(j["edges"].size() == 6);
  CHECK(j["edges"][0]["a"] == "a");
  CHECK(code_of([&] { graph_to_json(g, {}); }) == ErrorCode::validation);
}

}  // TEST_SUITE
