#include "scistory/repository/repository.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include "scistory/error.hpp"
#include "scistory/resources.hpp"

namespace scistory::repository {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t kMaxSlug = 60;

json parse_file(const fs::path& path) {
  const std::string content = resources::read_file(path.string());
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void check_version(const json& j, const fs::path& path) {
  const auto it = j.find("schema_version");
  if (it == j.end() || !it->is_number_integer()) {
    throw Error(ErrorCode::parse, "'" + path.string() + "' has no schema_version");
  }
  if (it->get<int>() != kSchemaVersion) {
    throw Error(ErrorCode::migration, "'" + path.string() + "' has schema_version " + std::to_string(it->get<int>()) +
                                          ", expected " + std::to_string(kSchemaVersion));
  }
}

bool valid_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](unsigned char c) {
           return std::islower(c) || std::isdigit(c) || c == '-';
         });
}

}  // namespace

json to_json(const std::vector<IndexEntry>& index) {
  json arr = json::array();
  for (const auto& e : index) {
    arr.push_back({{"doc_id", e.doc_id},
                   {"title", e.title},
                   {"pub_date", e.pub_date},
                   {"color_index", e.color_index},
                   {"record_path", e.record_path}});
  }
  return arr;
}

std::string slug(std::string_view title) {
  std::string out;
  bool dash = false;
  for (unsigned char c : title) {
    if (std::isalnum(c) && c < 0x80) {
      if (dash && !out.empty()) out += '-';
      dash = false;
      out += static_cast<char>(std::tolower(c));
      if (out.size() >= kMaxSlug) break;
    } else {
      dash = true;
    }
  }
  return out.empty() ? "document" : out;
}

Repository::Repository(fs::path data_dir) : dir_(std::move(data_dir)) {
  std::error_code ec;
  fs::create_directories(dir_ / "docs", ec);
  if (ec) throw Error(ErrorCode::io, "cannot create data directory '" + dir_.string() + "': " + ec.message());
}

fs::path Repository::default_data_dir() {
  if (const char* env = std::getenv("SCISTORY_DATA"); env != nullptr && *env != '\0') return env;
  return fs::current_path() / "scistory-data";
}

Repository::Index Repository::read_index() const {
  const fs::path path = dir_ / "index.json";
  if (!fs::exists(path)) return {};
  const json j = parse_file(path);
  check_version(j, path);
  Index index;
  try {
    index.next_color = j.at("next_color").get<std::size_t>();
    for (const auto& e : j.at("documents")) {
      index.entries.push_back({e.at("doc_id").get<std::string>(), e.at("title").get<std::string>(),
                               e.at("pub_date").get<std::string>(), e.at("color_index").get<std::size_t>(),
                               e.at("record_path").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, "'" + path.string() + "' is malformed: " + e.what());
  }
  std::set<std::string> ids;
  std::set<std::size_t> colors;
  for (const auto& e : index.entries) {
    if (!ids.insert(e.doc_id).second || !colors.insert(e.color_index).second) {
      throw Error(ErrorCode::consistency, "index lists '" + e.doc_id + "' or its color twice");
    }
  }
  return index;
}

void Repository::write_index(const Index& index) const {
  json j = {{"schema_version", kSchemaVersion}, {"next_color", index.next_color}, {"documents", to_json(index.entries)}};
  resources::write_file_atomic((dir_ / "index.json").string(), j.dump(2));
}

std::string Repository::save(const AnalysisRecord& record) {
  check_consistency(record);
  std::lock_guard lock(write_mutex_);
  Index index = read_index();

  const std::string base = slug(record.document.title) + "-" +
                           (record.document.pub_date.empty() ? std::string("undated") : record.document.pub_date);
  std::string id = base;
  const auto taken = [&](const std::string& candidate) {
    return std::any_of(index.entries.begin(), index.entries.end(), [&](const auto& e) { return e.doc_id == candidate; });
  };
  for (std::size_t n = 2; taken(id); ++n) id = base + "-" + std::to_string(n);

  AnalysisRecord stored = record;
  stored.document.id = id;
  const std::string rel = "docs/" + id + ".json";
  json j = {{"schema_version", kSchemaVersion}, {"record", to_json(stored)}};
  resources::write_file_atomic((dir_ / rel).string(), j.dump());

  index.entries.push_back({id, record.document.title, record.document.pub_date, index.next_color++, rel});
  write_index(index);
  return id;
}

AnalysisRecord Repository::load(std::string_view doc_id) const {
  const auto index = read_index();
  const auto it = std::find_if(index.entries.begin(), index.entries.end(),
                               [&](const auto& e) { return e.doc_id == doc_id; });
  if (!valid_id(doc_id) || it == index.entries.end()) {
    throw Error(ErrorCode::not_found, "no document '" + std::string(doc_id) + "'");
  }
  const fs::path path = dir_ / it->record_path;
  const json j = parse_file(path);
  check_version(j, path);
  if (!j.contains("record")) throw Error(ErrorCode::parse, "'" + path.string() + "' has no record");
  AnalysisRecord r = record_from_json(j["record"]);
  if (r.document.id != doc_id) {
    throw Error(ErrorCode::consistency, "'" + path.string() + "' holds document '" + r.document.id + "'");
  }
  return r;
}

std::vector<IndexEntry> Repository::list() const {
  auto entries = read_index().entries;
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.pub_date.empty() != b.pub_date.empty()) return b.pub_date.empty();
    return std::tie(a.pub_date, a.doc_id) < std::tie(b.pub_date, b.doc_id);
  });
  return entries;
}

bool Repository::contains(std::string_view doc_id) const {
  const auto index = read_index();
  return std::any_of(index.entries.begin(), index.entries.end(), [&](const auto& e) { return e.doc_id == doc_id; });
}

void Repository::remove(std::string_view doc_id) {
  std::lock_guard lock(write_mutex_);
  Index index = read_index();
  const auto it = std::find_if(index.entries.begin(), index.entries.end(),
                               [&](const auto& e) { return e.doc_id == doc_id; });
  if (it == index.entries.end()) throw Error(ErrorCode::not_found, "no document '" + std::string(doc_id) + "'");
  const fs::path path = dir_ / it->record_path;
  index.entries.erase(it);
  write_index(index);
  std::error_code ignored;
  fs::remove(path, ignored);
}

}  // namespace scistory::repository
