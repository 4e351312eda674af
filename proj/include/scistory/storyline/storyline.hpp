#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scistory/analytics/graph.hpp"
#include "scistory/comparative/classifier.hpp"
#include "scistory/entities/recognize.hpp"
#include "scistory/text/document.hpp"

namespace scistory::storyline {

enum class Granularity { paragraph, sentence };

std::string_view to_string(Granularity g) noexcept;
// Throws Error{validation} for anything but "paragraph" or "sentence".
Granularity granularity_from_string(std::string_view name);

inline constexpr std::size_t kDefaultEntityCap = 30;

struct Scene {
  std::size_t scene_index = 0;
  Granularity granularity = Granularity::paragraph;
  std::size_t source_ref = 0;            // paragraph or sentence index
  std::vector<std::string> entity_ids;  // sorted, unique
  double shade = 0.0;                   // comparative confidence in [0, 1]

  bool operator==(const Scene&) const = default;
};

/// One scene per paragraph (or sentence) holding at least one mention of an
/// entity in `include`, numbered in document order. `include` empty means
/// every entity. `predictions` is indexed by sentence_index; Error{consistency}
/// when its size differs from the document's sentence count or a mention
/// points at a missing sentence.
std::vector<Scene> build_scenes(const text::Document& doc, const std::vector<entities::EntityMention>& mentions,
                                const std::vector<comparative::Prediction>& predictions, Granularity granularity,
                                const std::vector<std::string>& include = {});

struct LayoutConfig {
  double slot_height = 18.0;
  double scene_gap = 36.0;
  double width_scale = 1.5;
};

// Throws Error{parameter} for non-positive or non-finite values.
void validate(const LayoutConfig& config);

struct Rect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  bool contains(double px, double py) const noexcept {
    return px >= x && px <= x + width && py >= y && py <= y + height;
  }
  bool operator==(const Rect&) const = default;
};

struct Anchor {
  std::size_t scene_index = 0;
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Anchor&) const = default;
};

struct Lifeline {
  std::string entity_id;
  std::string label;
  std::size_t community = 0;    // band order, 0 at the top
  std::size_t color_index = 0;  // unique per lifeline
  std::string color;            // "#rrggbb"
  double width = 1.0;
  std::vector<Anchor> anchors;  // one per member scene, in scene order
  std::size_t first_scene = 0;
  std::size_t last_scene = 0;

  bool operator==(const Lifeline&) const = default;
};

struct SceneBox {
  Scene scene;
  double x = 0.0;
  Rect rect;

  bool operator==(const SceneBox&) const = default;
};

struct Separator {
  std::size_t scene_index = 0;  // first scene of the section
  double x = 0.0;               // halfway to the previous scene
  std::string title;

  bool operator==(const Separator&) const = default;
};

struct Indicator {
  std::size_t scene_index = 0;
  double x = 0.0;
  double shade = 0.0;

  bool operator==(const Indicator&) const = default;
};

struct StorylineLayout {
  Granularity granularity = Granularity::paragraph;
  std::vector<SceneBox> scenes;
  std::vector<Lifeline> lifelines;
  std::vector<Separator> separators;
  std::vector<Indicator> indicators;

  const Lifeline* find(std::string_view entity_id) const;
  bool operator==(const StorylineLayout&) const = default;
};

/// Places lifelines and scene rectangles.
///
/// Communities get horizontal bands, ordered by their most frequent member
/// and separated by two slots. Inside a band the default order is frequency
/// descending. In each scene the members are packed into consecutive slots,
/// in default order, starting at the default slot of the first member.
/// Width is max(1, width_scale * (1 + ln frequency)). Throws
/// Error{consistency} when a scene entity is missing from the partition or
/// the table.
StorylineLayout layout(const std::vector<Scene>& scenes, const entities::EntityTable& table,
                       const analytics::Partition& partition, const LayoutConfig& config = {});

/// One separator before the first scene of every section that has scenes.
std::vector<Separator> section_boundaries(const text::Document& doc, const std::vector<Scene>& scenes,
                                          const LayoutConfig& config = {});

struct StorylineRequest {
  Granularity granularity = Granularity::paragraph;
  // Explicit selection; when empty the kDefaultEntityCap most frequent
  // entities are used. Unknown ids raise Error{validation}.
  std::vector<std::string> entities;
  std::size_t entity_cap = kDefaultEntityCap;
  LayoutConfig config;
};

// Entities the storyline will show for `request`, in table order.
std::vector<std::string> select_entities(const entities::EntityTable& table, const StorylineRequest& request);

/// Scenes, community grouping from sentence-level co-occurrence, layout,
/// separators and the indicator row in one call.
StorylineLayout build_storyline(const text::Document& doc, const entities::EntityTable& table,
                                const std::vector<comparative::Prediction>& predictions,
                                const StorylineRequest& request = {});

// Hex colour for lifeline number `within` of band `band`.
std::string lifeline_color(std::size_t band, std::size_t within);

nlohmann::json to_json(const StorylineLayout& layout);

}  // namespace scistory::storyline
