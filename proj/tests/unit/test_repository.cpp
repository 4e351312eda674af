#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <thread>

#include "doctest.h"
#include "scistory/entities/gazetteer.hpp"
#include "scistory/error.hpp"
#include "scistory/repository/repository.hpp"
#include "scistory/resources.hpp"
#include "scistory/text/parse.hpp"

using namespace scistory;
using namespace scistory::repository;
namespace fs = std::filesystem;

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

struct TempDir {
  fs::path path;
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path = fs::temp_directory_path() / ("scistory-repo-" + std::to_string(rng()));
  }
  ~TempDir() {
    std::error_code ignored;
    fs::remove_all(path, ignored);
  }
};

AnalysisRecord record(const std::string& title, const std::string& date) {
  AnalysisRecord r;
  r.document = text::parse_document(
      "Abstract\n\nWe compare LDA with PLSI. LDA is better than PLSI on perplexity.\n\n"
      "1. Introduction\n\nTopic models such as LSI came first.",
      text::InputFormat::plain, {title, date});
  const auto& gaz = entities::Gazetteer::bundled();
  r.mentions = entities::recognize(r.document, gaz);
  r.entity_table = entities::consolidate(r.mentions, gaz);
  r.predictions.assign(r.document.sentence_count(), {comparative::Label::non_comparative, 0.0});
  r.predictions[1] = {comparative::Label::comparative, 0.8125};
  r.sentence_graph = analytics::cooccurrence(r.mentions, analytics::Level::sentence);
  r.paragraph_graph = analytics::cooccurrence(r.mentions, analytics::Level::paragraph);
  r.config_fingerprint = "abc123";
  r.created_at = "2026-10-16T00:00:00Z";
  return r;
}

}  // namespace

TEST_CASE("slugs") {
  CHECK(slug("Probabilistic Latent Semantic Indexing") == "probabilistic-latent-semantic-indexing");
  CHECK(slug("  A/B -- test!  ") == "a-b-test");
  CHECK(slug("") == "document");
  CHECK(slug("\xc3\xa9t\xc3\xa9") == "t");
  CHECK(slug(std::string(100, 'x')).size() == 60);
}

TEST_CASE("document JSON round-trips") {
  const auto r = record("T", "2001-02-03");
  CHECK(document_from_json(to_json(r.document)) == r.document);
  CHECK(graph_from_json(to_json(r.sentence_graph)) == r.sentence_graph);
  CHECK(code_of([] { document_from_json(nlohmann::json::object()); }) == ErrorCode::schema);
}

TEST_CASE("save then load gives the same record") {
  TempDir tmp;
  Repository repo(tmp.path);
  auto r = record("Probabilistic LSI", "1999-08-15");
  REQUIRE(r.entity_table.entities.size() >= 3);
  const auto id = repo.save(r);
  CHECK(id == "probabilistic-lsi-1999-08-15");
  r.document.id = id;
  const auto loaded = repo.load(id);
  CHECK(loaded == r);
  CHECK(to_json(loaded) == to_json(r));
  CHECK(repo.contains(id));
  CHECK(fs::exists(tmp.path / "docs" / (id + ".json")));
}

TEST_CASE("duplicate title and date get a suffix") {
  TempDir tmp;
  Repository repo(tmp.path);
  CHECK(repo.save(record("Same", "2000-01-01")) == "same-2000-01-01");
  CHECK(repo.save(record("Same", "2000-01-01")) == "same-2000-01-01-2");
  CHECK(repo.save(record("Same", "2000-01-01")) == "same-2000-01-01-3");
  CHECK(repo.save(record("Same", "")) == "same-undated");
}

TEST_CASE("list is date-sorted and colors follow insertion") {
  TempDir tmp;
  Repository repo(tmp.path);
  CHECK(repo.list().empty());
  repo.save(record("B", "2005-01-01"));
  repo.save(record("A", "1999-01-01"));
  repo.save(record("C", "2001-06-30"));
  const auto rows = repo.list();
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].title == "A");
  CHECK(rows[1].title == "C");
  CHECK(rows[2].title == "B");
  CHECK(rows[0].color_index == 1);
  CHECK(rows[1].color_index == 2);
  CHECK(rows[2].color_index == 0);

  repo.remove(rows[1].doc_id);
  const auto after = repo.list();
  CHECK(after.size() == 2);
  CHECK_FALSE(repo.contains(rows[1].doc_id));
  CHECK(code_of([&] { repo.load(rows[1].doc_id); }) == ErrorCode::not_found);
  // Colors are never reused.
  repo.save(record("D", "2010-01-01"));
  CHECK(repo.list().back().color_index == 3);
}

TEST_CASE("a second handle sees the same store") {
  TempDir tmp;
  const auto id = Repository(tmp.path).save(record("X", "2002-02-02"));
  Repository again(tmp.path);
  CHECK(again.list().size() == 1);
  CHECK(again.load(id).document.title == "X");
}

TEST_CASE("load errors") {
  TempDir tmp;
  Repository repo(tmp.path);
  CHECK(code_of([&] { repo.load("missing"); }) == ErrorCode::not_found);
  CHECK(code_of([&] { repo.load("../index"); }) == ErrorCode::not_found);
  CHECK(code_of([&] { repo.remove("missing"); }) == ErrorCode::not_found);

  const auto id = repo.save(record("Y", "2003-03-03"));
  const auto file = tmp.path / "docs" / (id + ".json");
  const std::string good = resources::read_file(file.string());

  resources::write_file_atomic(file.string(), good.substr(0, good.size() / 2));
  CHECK(code_of([&] { repo.load(id); }) == ErrorCode::parse);

  auto j = nlohmann::json::parse(good);
  j["schema_version"] = kSchemaVersion + 1;
  resources::write_file_atomic(file.string(), j.dump());
  CHECK(code_of([&] { repo.load(id); }) == ErrorCode::migration);

  j["schema_version"] = kSchemaVersion;
  j["record"]["predictions"].erase(0);
  resources::write_file_atomic(file.string(), j.dump());
  CHECK(code_of([&] { repo.load(id); }) == ErrorCode::consistency);

  resources::write_file_atomic((tmp.path / "index.json").string(), "{\"schema_version\": 0}");
  CHECK(code_of([&] { repo.list(); }) == ErrorCode::migration);
}

TEST_CASE("inconsistent records are refused") {
  TempDir tmp;
  Repository repo(tmp.path);
  auto r = record("Z", "2004-04-04");
  r.predictions.pop_back();
  CHECK(code_of([&] { repo.save(r); }) == ErrorCode::consistency);
  r = record("Z", "2004-04-04");
  r.mentions.front().sentence_index = 99;
  CHECK(code_of([&] { repo.save(r); }) == ErrorCode::consistency);
  r = record("Z", "2004-04-04");
  r.entity_table.entities.pop_back();
  CHECK(code_of([&] { repo.save(r); }) == ErrorCode::consistency);
  CHECK(repo.list().empty());
}

TEST_CASE("storage failures are I/O errors") {
  TempDir tmp;
  fs::create_directories(tmp.path);
  std::ofstream(tmp.path / "plain-file") << "x";
  CHECK(code_of([&] { Repository(tmp.path / "plain-file" / "store"); }) == ErrorCode::io);

  Repository repo(tmp.path / "store");
  fs::remove_all(tmp.path / "store" / "docs");
  std::ofstream(tmp.path / "store" / "docs") << "not a directory";
  CHECK(code_of([&] { repo.save(record("W", "2005-05-05")); }) == ErrorCode::io);
  CHECK(repo.list().empty());
}

TEST_CASE("concurrent saves keep the index whole") {
  TempDir tmp;
  Repository repo(tmp.path);
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&, t] {
      for (int i = 0; i < 5; ++i) repo.save(record("T" + std::to_string(t), "2000-01-0" + std::to_string(1 + i)));
    });
  for (auto& w : workers) w.join();
  const auto rows = repo.list();
  CHECK(rows.size() == 20);
  std::set<std::size_t> colors;
  for (const auto& r : rows) colors.insert(r.color_index);
  CHECK(colors.size() == 20);
  for (const auto& entry : fs::directory_iterator(tmp.path)) CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("data directory default honours the environment") {
  ::setenv("SCISTORY_DATA", "/tmp/somewhere", 1);
  CHECK(Repository::default_data_dir() == fs::path("/tmp/somewhere"));
  ::unsetenv("SCISTORY_DATA");
  CHECK(Repository::default_data_dir().filename() == "scistory-data");
}
