#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scistory/analytics/graph.hpp"
#include "scistory/comparative/classifier.hpp"
#include "scistory/entities/gazetteer.hpp"
#include "scistory/repository/repository.hpp"
#include "scistory/storyline/storyline.hpp"
#include "scistory/text/parse.hpp"

namespace scistory::service {

inline constexpr std::size_t kMaxUploadBytes = 1u << 20;

struct PipelineConfig {
  std::string lexicon_path;    // training only; empty means the bundled list
  std::string gazetteer_path;  // empty means the bundled gazetteer
  std::string model_path;      // required
  std::size_t radius = 3;
  double min_sup = 0.1;
  double min_conf = 0.6;
  std::size_t block_max = 10000;
  std::size_t top_k_entities = 30;
  // Optional external entity linker, "http://host:port/path". Blocks of at
  // most block_max characters are posted to it instead of gazetteer lookup.
  std::string linker_url;
};

// Throws Error{configuration} for out-of-range values or unreadable paths.
void validate(const PipelineConfig& config);

struct CollectionViews {
  std::vector<repository::IndexEntry> documents;
  analytics::EvolutionData evolution;
  analytics::CoocGraph graph;
  analytics::Partition partition;
  std::unordered_map<std::string, std::string> labels;  // entity id -> name
};

/// Runs parse, classify, recognize and graph building for uploads and
/// answers view queries from the stored records.
///
/// Gazetteer edits swap in a new immutable gazetteer; analyses already
/// running keep the one they started with. Edits are saved to
/// `<data_dir>/gazetteer.json`, which takes precedence over
/// `gazetteer_path` on the next start.
class Pipeline {
 public:
  // Error{configuration} before any work when validate() fails or the model
  // or gazetteer cannot be loaded.
  Pipeline(PipelineConfig config, std::filesystem::path data_dir);

  const PipelineConfig& config() const noexcept { return config_; }
  const comparative::BayesModel& model() const noexcept { return model_; }
  repository::Repository& repository() noexcept { return repo_; }
  std::shared_ptr<const entities::Gazetteer> gazetteer() const;

  /// Full analysis without persisting. Errors are StageError labelled
  /// "upload" (over kMaxUploadBytes, Error{too_large}), "parse", "classify",
  /// "recognize" or "analytics".
  repository::AnalysisRecord analyze(std::string_view raw, text::InputFormat format,
                                     const text::DocumentMeta& meta) const;

  // analyze() plus persistence (stage "persist"); returns the stored record.
  repository::AnalysisRecord analyze_document(std::string_view raw, text::InputFormat format,
                                              const text::DocumentMeta& meta);

  /// Error{not_found} for an unknown id, Error{validation} for an unknown
  /// entity in `entities`.
  storyline::StorylineLayout get_storyline(std::string_view doc_id, storyline::Granularity granularity,
                                           const std::vector<std::string>& entities = {},
                                           const storyline::LayoutConfig& layout = {}) const;

  // Error{empty_collection} when nothing is stored.
  CollectionViews get_collection_views() const;

  nlohmann::json text_view(std::string_view doc_id) const;
  nlohmann::json entity_ranking(std::string_view doc_id) const;
  nlohmann::json cooccurrence_view(std::string_view doc_id, analytics::Level level) const;

  /// Adds or replaces a gazetteer entry. Without an id the entry updates the
  /// entity whose name matches `canonical`, else gets a new id from the
  /// normalized name. Existing records are not re-analyzed.
  entities::GazetteerEntry update_gazetteer(entities::GazetteerEntry entry);

 private:
  std::string fingerprint() const;

  PipelineConfig config_;
  comparative::BayesModel model_;
  std::filesystem::path gazetteer_store_;
  mutable std::mutex gazetteer_mutex_;
  std::shared_ptr<const entities::Gazetteer> gazetteer_;
  repository::Repository repo_;
};

// Evolution nodes plus the document index, for the arc diagram.
nlohmann::json evolution_json(const CollectionViews& views);
// Graph JSON of the merged sentence-level graph with communities.
nlohmann::json communities_json(const CollectionViews& views);

}  // namespace scistory::service
