#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scistory/entities/gazetteer.hpp"
#include "scistory/text/document.hpp"

namespace scistory::entities {

struct EntityMention {
  std::string entity_id;
  std::size_t paragraph_index = 0;
  std::size_t sentence_index = 0;
  std::size_t char_start = 0;  // within sentence, scalars
  std::size_t char_end = 0;
  std::string surface;

  bool operator==(const EntityMention&) const = default;
};

/// Leftmost-longest, non-overlapping gazetteer matches over the token keys
/// of each sentence. Mentions come back in document order.
std::vector<EntityMention> recognize(const text::Document& doc, const Gazetteer& gaz);

struct EntityStats {
  std::string id;
  std::string canonical;
  std::size_t mention_count = 0;
  std::size_t first_sentence_index = 0;
  std::vector<EntityMention> mentions;

  bool operator==(const EntityStats&) const = default;
};

// Ordered by mention_count descending, then first_sentence_index, then id.
struct EntityTable {
  std::vector<EntityStats> entities;

  const EntityStats* find(std::string_view id) const;
  std::size_t total_mentions() const;
  bool operator==(const EntityTable&) const = default;
};

// Throws Error{consistency} for a mention whose id is not in `gaz`.
EntityTable consolidate(const std::vector<EntityMention>& mentions, const Gazetteer& gaz);

nlohmann::json to_json(const EntityMention& m);
EntityMention mention_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EntityTable& table);

}  // namespace scistory::entities
