#pragma once

#include <string>

#include "scistory/resources.hpp"

namespace scistory::testing {

inline std::string fixture_path(const std::string& name) { return std::string(SCISTORY_FIXTURES_DIR) + "/" + name; }
inline std::string source_path(const std::string& name) { return std::string(SCISTORY_SOURCE_DIR) + "/" + name; }
inline std::string read_fixture(const std::string& name) { return resources::read_file(fixture_path(name)); }

}  // namespace scistory::testing

#include <filesystem>
#include <random>

namespace scistory::testing {

// Unique directory under the system temp dir, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& prefix = "scistory-test") {
    static std::mt19937_64 rng(std::random_device{}());
    path = std::filesystem::temp_directory_path() / (prefix + "-" + std::to_string(rng()));
  }
  ~TempDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path, ignored);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::string bundled_model_path() { return source_path("data/model.json"); }

}  // namespace scistory::testing
