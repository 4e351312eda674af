#pragma once

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scistory/repository/record.hpp"

namespace scistory::repository {

struct IndexEntry {
  std::string doc_id;
  std::string title;
  std::string pub_date;
  std::size_t color_index = 0;
  std::string record_path;  // relative to the data directory

  bool operator==(const IndexEntry&) const = default;
};

nlohmann::json to_json(const std::vector<IndexEntry>& index);

// Lowercase ASCII letters and digits joined by single dashes, at most 60
// characters; "document" when nothing is left.
std::string slug(std::string_view title);

/// Directory store: `<dir>/index.json` and `<dir>/docs/<id>.json`.
///
/// Writes are serialized by an in-process lock and land through
/// write-temp-then-rename, so readers never see a partial file. Ids are
/// slug(title) + "-" + date ("undated" without a date); a clash gets "-2",
/// "-3", ... Colors are handed out in insertion order and never reused.
class Repository {
 public:
  // Creates the directory tree if needed; Error{io} when that fails.
  explicit Repository(std::filesystem::path data_dir);

  // $SCISTORY_DATA, or "scistory-data" under the working directory.
  static std::filesystem::path default_data_dir();

  const std::filesystem::path& data_dir() const noexcept { return dir_; }

  // Runs check_consistency(), stores the record under a fresh id and
  // returns it. The stored document.id is that id.
  std::string save(const AnalysisRecord& record);

  // Error{not_found} for an unknown id, Error{parse} for a corrupt file,
  // Error{migration} for another schema version.
  AnalysisRecord load(std::string_view doc_id) const;

  // Sorted by pub_date (undated last), then doc_id.
  std::vector<IndexEntry> list() const;

  bool contains(std::string_view doc_id) const;

  // Error{not_found} for an unknown id.
  void remove(std::string_view doc_id);

 private:
  struct Index {
    std::size_t next_color = 0;
    std::vector<IndexEntry> entries;
  };

  Index read_index() const;
  void write_index(const Index& index) const;

  std::filesystem::path dir_;
  mutable std::mutex write_mutex_;
};

}  // namespace scistory::repository
