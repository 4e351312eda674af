#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scistory/analytics/graph.hpp"
#include "scistory/comparative/classifier.hpp"
#include "scistory/entities/recognize.hpp"
#include "scistory/text/document.hpp"

namespace scistory::repository {

inline constexpr int kSchemaVersion = 1;

// Everything the views need about one analyzed document.
struct AnalysisRecord {
  text::Document document;  // document.id is the repository id once saved
  entities::EntityTable entity_table;
  std::vector<entities::EntityMention> mentions;      // document order
  std::vector<comparative::Prediction> predictions;   // one per sentence
  analytics::CoocGraph sentence_graph;
  analytics::CoocGraph paragraph_graph;
  std::string config_fingerprint;
  std::string created_at;  // ISO 8601, UTC

  bool operator==(const AnalysisRecord&) const = default;
};

/// Throws Error{consistency} when a mention points at a missing sentence,
/// the prediction count differs from the sentence count, or the entity table
/// disagrees with the mention list.
void check_consistency(const AnalysisRecord& record);

nlohmann::json to_json(const text::Document& doc);
text::Document document_from_json(const nlohmann::json& j);

nlohmann::json to_json(const analytics::CoocGraph& g);
analytics::CoocGraph graph_from_json(const nlohmann::json& j);

/// Canonical JSON form. The entity table is stored without its mention
/// lists, which are rebuilt from `mentions` on load.
nlohmann::json to_json(const AnalysisRecord& record);
// Error{schema} for a structurally wrong document, then check_consistency().
AnalysisRecord record_from_json(const nlohmann::json& j);

}  // namespace scistory::repository
