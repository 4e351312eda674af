#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "scistory/error.hpp"
#include "scistory/storyline/storyline.hpp"
#include "scistory/text/parse.hpp"

using namespace scistory;
using namespace scistory::storyline;
using comparative::Prediction;
using entities::EntityMention;
using entities::EntityStats;
using entities::EntityTable;

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

text::Document doc_of(const std::string& raw) { return text::parse_document(raw, text::InputFormat::plain, {"T", ""}); }

EntityMention mention(const text::Document& doc, const std::string& id, std::size_t sentence) {
  const auto* s = doc.find_sentence(sentence);
  REQUIRE(s != nullptr);
  return {id, s->paragraph_index, sentence, 0, 1, id};
}

std::vector<Prediction> flat(const text::Document& doc, double confidence = 0.0) {
  return std::vector<Prediction>(doc.sentence_count(), Prediction{comparative::Label::non_comparative, confidence});
}

// Table in consolidate() order from a mention list.
EntityTable table_of(const std::vector<EntityMention>& mentions) {
  std::map<std::string, EntityStats> by_id;
  for (const auto& m : mentions) {
    auto& e = by_id[m.entity_id];
    if (e.mentions.empty()) {
      e.id = e.canonical = m.entity_id;
      e.first_sentence_index = m.sentence_index;
    }
    e.first_sentence_index = std::min(e.first_sentence_index, m.sentence_index);
    e.mentions.push_back(m);
    e.mention_count = e.mentions.size();
  }
  EntityTable t;
  for (auto& [id, e] : by_id) t.entities.push_back(e);
  std::sort(t.entities.begin(), t.entities.end(), [](const auto& a, const auto& b) {
    if (a.mention_count != b.mention_count) return a.mention_count > b.mention_count;
    if (a.first_sentence_index != b.first_sentence_index) return a.first_sentence_index < b.first_sentence_index;
    return a.id < b.id;
  });
  return t;
}

Scene scene(std::size_t i, std::vector<std::string> ids) { return {i, Granularity::sentence, i, std::move(ids), 0.0}; }

EntityTable counts(const std::vector<std::pair<std::string, std::size_t>>& rows) {
  EntityTable t;
  for (const auto& [id, n] : rows) t.entities.push_back({id, id, n, 0, {}});
  return t;
}

}  // namespace

TEST_CASE("granularity names round-trip") {
  CHECK(granularity_from_string("paragraph") == Granularity::paragraph);
  CHECK(granularity_from_string(to_string(Granularity::sentence)) == Granularity::sentence);
  CHECK(code_of([] { granularity_from_string("section"); }) == ErrorCode::validation);
}

TEST_CASE("scenes skip paragraphs without mentions and renumber") {
  const auto doc = doc_of("P zero.\n\nP one.\n\nP two.\n\nP three.\n\nP four.");
  REQUIRE(doc.paragraphs.size() == 5);
  const std::vector<EntityMention> ms{mention(doc, "a", 0), mention(doc, "b", 3), mention(doc, "a", 3)};
  const auto scenes = build_scenes(doc, ms, flat(doc), Granularity::paragraph);
  REQUIRE(scenes.size() == 2);
  CHECK(scenes[0].scene_index == 0);
  CHECK(scenes[1].scene_index == 1);
  CHECK(scenes[0].source_ref == 0);
  CHECK(scenes[1].source_ref == 3);
  CHECK(scenes[1].entity_ids == std::vector<std::string>{"a", "b"});
}

TEST_CASE("paragraph shade is the strongest sentence") {
  const auto doc = doc_of("First here. Second here.\n\nOther text.");
  auto preds = flat(doc);
  preds[0].confidence = 0.2;
  preds[1].confidence = 0.9;
  const auto scenes = build_scenes(doc, {mention(doc, "a", 0)}, preds, Granularity::paragraph);
  REQUIRE(scenes.size() == 1);
  CHECK(scenes[0].shade == doctest::Approx(0.9));
}

TEST_CASE("sentence granularity yields one scene per mention-bearing sentence") {
  const auto doc = doc_of("One here. Two here. Three here.\n\nFour here. Five here.");
  const std::vector<EntityMention> ms{mention(doc, "a", 0), mention(doc, "b", 2), mention(doc, "a", 2),
                                      mention(doc, "c", 4)};
  const auto para = build_scenes(doc, ms, flat(doc), Granularity::paragraph);
  const auto sent = build_scenes(doc, ms, flat(doc), Granularity::sentence);
  CHECK(para.size() == 2);
  REQUIRE(sent.size() == 3);
  CHECK(sent[0].source_ref == 0);
  CHECK(sent[1].source_ref == 2);
  CHECK(sent[2].source_ref == 4);
  CHECK(sent[2].granularity == Granularity::sentence);
}

TEST_CASE("scene filter keeps only the selected entities") {
  const auto doc = doc_of("One here. Two here.");
  const std::vector<EntityMention> ms{mention(doc, "a", 0), mention(doc, "b", 1), mention(doc, "b", 0)};
  const auto scenes = build_scenes(doc, ms, flat(doc), Granularity::sentence, {"a"});
  REQUIRE(scenes.size() == 1);
  CHECK(scenes[0].entity_ids == std::vector<std::string>{"a"});
}

TEST_CASE("scene input errors") {
  const auto doc = doc_of("One here. Two here.");
  CHECK(code_of([&] { build_scenes(doc, {}, {}, Granularity::sentence); }) == ErrorCode::consistency);
  const EntityMention stray{"a", 0, 9, 0, 1, "a"};
  CHECK(code_of([&] { build_scenes(doc, {stray}, flat(doc), Granularity::sentence); }) == ErrorCode::consistency);
}

TEST_CASE("co-present members of one community sit in adjacent slots") {
  const LayoutConfig cfg{10.0, 30.0, 1.0};
  const auto out = layout({scene(0, {"a", "b"})}, counts({{"a", 2}, {"b", 1}}), {{"a", 0}, {"b", 0}}, cfg);
  const auto ya = out.find("a")->anchors.at(0).y;
  const auto yb = out.find("b")->anchors.at(0).y;
  CHECK(std::abs(ya - yb) == doctest::Approx(cfg.slot_height));
}

TEST_CASE("separate communities keep a band gap") {
  const LayoutConfig cfg{10.0, 30.0, 1.0};
  const auto out = layout({scene(0, {"a"}), scene(1, {"b"}), scene(2, {"a"}), scene(3, {"b"})},
                          counts({{"a", 2}, {"b", 2}}), {{"a", 0}, {"b", 1}}, cfg);
  for (const auto& pa : out.find("a")->anchors)
    for (const auto& pb : out.find("b")->anchors) CHECK(std::abs(pa.y - pb.y) >= 2.0 * cfg.slot_height);
  CHECK(out.find("a")->community != out.find("b")->community);
}

TEST_CASE("anchors sit exactly at member scenes") {
  std::vector<Scene> scenes;
  for (std::size_t i = 0; i < 6; ++i) scenes.push_back(scene(i, i == 2 || i == 3 || i == 5 ? std::vector<std::string>{"e", "f"} : std::vector<std::string>{"f"}));
  const auto out = layout(scenes, counts({{"f", 6}, {"e", 3}}), {{"e", 0}, {"f", 0}});
  const auto* e = out.find("e");
  REQUIRE(e != nullptr);
  std::vector<std::size_t> at;
  for (const auto& a : e->anchors) at.push_back(a.scene_index);
  CHECK(at == std::vector<std::size_t>{2, 3, 5});
  CHECK(e->first_scene == 2);
  CHECK(e->last_scene == 5);
}

TEST_CASE("bands follow the most frequent member and widths follow frequency") {
  const LayoutConfig cfg{10.0, 30.0, 2.0};
  const auto table = counts({{"x", 9}, {"a", 4}, {"y", 1}, {"b", 1}});
  const auto out = layout({scene(0, {"a", "b", "x", "y"})}, table, {{"a", 5}, {"b", 5}, {"x", 7}, {"y", 7}}, cfg);
  REQUIRE(out.lifelines.size() == 4);
  CHECK(out.lifelines[0].entity_id == "x");
  CHECK(out.lifelines[1].entity_id == "y");
  CHECK(out.lifelines[2].entity_id == "a");
  CHECK(out.lifelines[0].community == 0);
  CHECK(out.lifelines[2].community == 1);
  CHECK(out.find("x")->width == doctest::Approx(2.0 * (1.0 + std::log(9.0))));
  CHECK(out.find("y")->width == doctest::Approx(2.0));
  CHECK(layout({scene(0, {"y"})}, table, {{"y", 0}}, {10.0, 30.0, 0.1}).lifelines[0].width == 1.0);
}

TEST_CASE("colors are distinct and deterministic") {
  std::set<std::string> seen;
  for (std::size_t b = 0; b < 4; ++b)
    for (std::size_t w = 0; w < 8; ++w) {
      const auto c = lifeline_color(b, w);
      CHECK(c.size() == 7);
      CHECK(c[0] == '#');
      CHECK(c == lifeline_color(b, w));
      seen.insert(c);
    }
  CHECK(seen.size() == 32);
}

TEST_CASE("layout errors") {
  const auto table = counts({{"a", 1}});
  CHECK(code_of([&] { layout({scene(0, {"a"})}, table, {}); }) == ErrorCode::consistency);
  CHECK(code_of([&] { layout({scene(0, {"z"})}, table, {{"z", 0}}); }) == ErrorCode::consistency);
  CHECK(code_of([&] { layout({}, table, {}, {0.0, 1.0, 1.0}); }) == ErrorCode::parameter);
}

TEST_CASE("section separators") {
  const auto doc = text::parse_document(
      "Abstract\n\nAlpha one.\n\n1. Introduction\n\nBeta one.\n\n2. Method\n\nGamma one.\n\n3. Results\n\nDelta one.",
      text::InputFormat::plain, {"T", ""});
  REQUIRE(doc.sections.size() == 4);
  const auto scenes_in = [&](std::vector<std::size_t> sentences) {
    std::vector<EntityMention> ms;
    for (auto s : sentences) ms.push_back(mention(doc, "a", s));
    return build_scenes(doc, ms, flat(doc), Granularity::sentence);
  };
  const LayoutConfig cfg{10.0, 20.0, 1.0};

  const auto two = section_boundaries(doc, scenes_in({1, 3}), cfg);
  REQUIRE(two.size() == 2);
  CHECK(two[0].title == "1. Introduction");
  CHECK(two[1].title == "3. Results");
  CHECK(two[1].scene_index == 1);
  CHECK(two[1].x == doctest::Approx(10.0));

  CHECK(section_boundaries(doc, scenes_in({2}), cfg).size() == 1);

  auto bare = doc;
  bare.sections.clear();
  CHECK(section_boundaries(bare, scenes_in({0, 1, 2}), cfg).empty());
}

TEST_CASE("entity selection") {
  const auto table = counts({{"a", 3}, {"b", 2}, {"c", 1}});
  StorylineRequest req;
  CHECK(select_entities(table, req) == std::vector<std::string>{"a", "b", "c"});
  req.entity_cap = 2;
  CHECK(select_entities(table, req) == std::vector<std::string>{"a", "b"});
  req.entities = {"c", "a", "c"};
  CHECK(select_entities(table, req) == std::vector<std::string>{"a", "c"});
  req.entities = {"nope"};
  CHECK(code_of([&] { select_entities(table, req); }) == ErrorCode::validation);
  req.entities.clear();
  req.entity_cap = 0;
  CHECK(code_of([&] { select_entities(table, req); }) == ErrorCode::parameter);
}

TEST_CASE("default cap keeps the thirty most frequent entities") {
  std::vector<std::pair<std::string, std::size_t>> rows;
  for (int i = 0; i < 40; ++i) rows.emplace_back("e" + std::to_string(100 + i), 50 - i);
  const auto picked = select_entities(counts(rows), {});
  REQUIRE(picked.size() == kDefaultEntityCap);
  CHECK(picked.front() == "e100");
  CHECK(picked.back() == "e129");
}

TEST_CASE("storyline invariants hold on random documents") {
  std::mt19937_64 rng(99);
  const std::vector<std::string> ids{"a", "b", "c", "d", "e", "f", "g"};
  for (int round = 0; round < 60; ++round) {
    std::string raw;
    const int paragraphs = 1 + static_cast<int>(rng() % 6);
    for (int p = 0; p < paragraphs; ++p) {
      if (p > 0) raw += "\n\n";
      const int sentences = 1 + static_cast<int>(rng() % 3);
      for (int s = 0; s < sentences; ++s) raw += "Line " + std::to_string(p) + " number " + std::to_string(s) + ". ";
    }
    const auto doc = doc_of(raw);
    std::vector<EntityMention> ms;
    auto preds = flat(doc);
    for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
      if (rng() % 3 == 0) preds[s].confidence = static_cast<double>(rng() % 1000) / 1000.0;
      for (const auto& id : ids)
        if (rng() % 4 == 0) ms.push_back(mention(doc, id, s));
    }
    if (ms.empty()) continue;
    const auto table = table_of(ms);
    analytics::Partition partition;
    for (const auto& e : table.entities) partition[e.id] = rng() % 3;
    const auto granularity = rng() % 2 ? Granularity::paragraph : Granularity::sentence;
    const LayoutConfig cfg{12.0, 25.0, 1.5};
    const auto scenes = build_scenes(doc, ms, preds, granularity);
    const auto out = layout(scenes, table, partition, cfg);

    for (std::size_t i = 0; i < scenes.size(); ++i) {
      CHECK(scenes[i].scene_index == i);
      if (i > 0) CHECK(scenes[i].source_ref > scenes[i - 1].source_ref);
      CHECK(!scenes[i].entity_ids.empty());
    }
    // Membership exactness and x monotonicity.
    for (const auto& l : out.lifelines) {
      std::set<std::size_t> expected;
      for (const auto& s : scenes)
        if (std::binary_search(s.entity_ids.begin(), s.entity_ids.end(), l.entity_id)) expected.insert(s.scene_index);
      std::set<std::size_t> got;
      for (std::size_t k = 0; k < l.anchors.size(); ++k) {
        got.insert(l.anchors[k].scene_index);
        CHECK(l.anchors[k].x == doctest::Approx(static_cast<double>(l.anchors[k].scene_index) * cfg.scene_gap));
        if (k > 0) CHECK(l.anchors[k].scene_index > l.anchors[k - 1].scene_index);
      }
      CHECK(got == expected);
      CHECK(l.first_scene == *expected.begin());
      CHECK(l.last_scene == *expected.rbegin());
    }
    // Slots per scene are distinct and contiguous; rectangles enclose
    // exactly the member anchors at their x.
    for (const auto& box : out.scenes) {
      std::vector<double> ys;
      for (const auto& l : out.lifelines)
        for (const auto& a : l.anchors)
          if (a.scene_index == box.scene.scene_index) ys.push_back(a.y);
      CHECK(ys.size() == box.scene.entity_ids.size());
      std::sort(ys.begin(), ys.end());
      for (std::size_t k = 1; k < ys.size(); ++k) CHECK(ys[k] - ys[k - 1] == doctest::Approx(cfg.slot_height));
      for (const auto& l : out.lifelines)
        for (const auto& a : l.anchors) {
          const bool member = std::binary_search(box.scene.entity_ids.begin(), box.scene.entity_ids.end(), l.entity_id);
          if (a.scene_index == box.scene.scene_index) CHECK(box.rect.contains(a.x, a.y) == member);
          else CHECK_FALSE(box.rect.contains(a.x, a.y));
        }
    }
    // Width monotonicity.
    for (const auto& l1 : out.lifelines)
      for (const auto& l2 : out.lifelines)
        if (table.find(l1.entity_id)->mention_count > table.find(l2.entity_id)->mention_count)
          CHECK(l1.width >= l2.width);
    // Indicator completeness.
    REQUIRE(out.indicators.size() == scenes.size());
    for (std::size_t i = 0; i < scenes.size(); ++i) {
      const auto& ind = out.indicators[i];
      CHECK(ind.shade >= 0.0);
      CHECK(ind.shade <= 1.0);
      CHECK(ind.x == doctest::Approx(static_cast<double>(i) * cfg.scene_gap));
      bool any_positive = false;
      for (const auto* s : doc.sentences()) {
        const bool inside = granularity == Granularity::paragraph ? s->paragraph_index == scenes[i].source_ref
                                                                   : s->sentence_index == scenes[i].source_ref;
        if (inside && preds[s->sentence_index].confidence > 0.0) any_positive = true;
      }
      CHECK((ind.shade == 0.0) == !any_positive);
    }
    std::set<std::size_t> colors;
    for (const auto& l : out.lifelines) colors.insert(l.color_index);
    CHECK(colors.size() == out.lifelines.size());
  }
}

TEST_CASE("build_storyline composes scenes, layout and separators") {
  const auto doc = text::parse_document("Abstract\n\nAlpha one. Beta two.\n\n1. Introduction\n\nGamma three.",
                                        text::InputFormat::plain, {"T", ""});
  const std::vector<EntityMention> ms{mention(doc, "a", 0), mention(doc, "b", 0), mention(doc, "b", 1),
                                      mention(doc, "c", 2)};
  const auto table = table_of(ms);
  StorylineRequest req;
  req.granularity = Granularity::sentence;
  const auto out = build_storyline(doc, table, flat(doc, 0.25), req);
  CHECK(out.granularity == Granularity::sentence);
  CHECK(out.scenes.size() == 3);
  CHECK(out.lifelines.size() == 3);
  CHECK(out.separators.size() == 2);
  CHECK(out.find("a")->community == out.find("b")->community);
  CHECK(out.find("c")->community != out.find("a")->community);

  req.entities = {"c"};
  const auto one = build_storyline(doc, table, flat(doc), req);
  CHECK(one.lifelines.size() == 1);
  CHECK(one.scenes.size() == 1);

  const auto j = to_json(out);
  CHECK(j.at("version") == 1);
  CHECK(j.at("granularity") == "sentence");
  CHECK(j.at("scenes").size() == 3);
  CHECK(j.at("scenes")[0].at("rect").contains("width"));
  CHECK(j.at("lifelines")[0].at("anchors")[0].size() == 2);
  CHECK(j.at("indicators")[0].at("shade") == 0.25);
  CHECK(j.at("separators")[1].at("title") == "1. Introduction");
}
