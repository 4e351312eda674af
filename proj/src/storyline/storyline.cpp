#include "scistory/storyline/storyline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>

#include "scistory/error.hpp"

namespace scistory::storyline {

std::string_view to_string(Granularity g) noexcept { return g == Granularity::paragraph ? "paragraph" : "sentence"; }

Granularity granularity_from_string(std::string_view name) {
  if (name == "paragraph") return Granularity::paragraph;
  if (name == "sentence") return Granularity::sentence;
  throw Error(ErrorCode::validation, "granularity must be 'paragraph' or 'sentence', got '" + std::string(name) + "'");
}

std::vector<Scene> build_scenes(const text::Document& doc, const std::vector<entities::EntityMention>& mentions,
                                const std::vector<comparative::Prediction>& predictions, Granularity granularity,
                                const std::vector<std::string>& include) {
  if (predictions.size() != doc.sentence_count()) {
    throw Error(ErrorCode::consistency, "expected " + std::to_string(doc.sentence_count()) + " predictions, got " +
                                            std::to_string(predictions.size()));
  }
  const std::set<std::string> wanted(include.begin(), include.end());

  std::map<std::size_t, std::set<std::string>> members;  // source_ref -> entities
  for (const auto& m : mentions) {
    const text::Sentence* s = doc.find_sentence(m.sentence_index);
    if (s == nullptr || s->paragraph_index != m.paragraph_index) {
      throw Error(ErrorCode::consistency, "mention of '" + m.entity_id + "' points at missing sentence " +
                                              std::to_string(m.sentence_index));
    }
    if (!wanted.empty() && !wanted.contains(m.entity_id)) continue;
    const std::size_t ref = granularity == Granularity::paragraph ? m.paragraph_index : m.sentence_index;
    members[ref].insert(m.entity_id);
  }

  std::vector<Scene> scenes;
  scenes.reserve(members.size());
  for (auto& [ref, ids] : members) {
    Scene scene;
    scene.scene_index = scenes.size();
    scene.granularity = granularity;
    scene.source_ref = ref;
    scene.entity_ids.assign(ids.begin(), ids.end());
    if (granularity == Granularity::sentence) {
      scene.shade = predictions[ref].confidence;
    } else {
      for (const auto& s : doc.paragraphs[ref].sentences)
        scene.shade = std::max(scene.shade, predictions[s.sentence_index].confidence);
    }
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

void validate(const LayoutConfig& config) {
  for (const auto& [name, v] : {std::pair{"slot_height", config.slot_height}, std::pair{"scene_gap", config.scene_gap},
                                std::pair{"width_scale", config.width_scale}}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw Error(ErrorCode::parameter, std::string(name) + " must be positive, got " + std::to_string(v));
    }
  }
}

const Lifeline* StorylineLayout::find(std::string_view entity_id) const {
  for (const auto& l : lifelines)
    if (l.entity_id == entity_id) return &l;
  return nullptr;
}

namespace {

constexpr double kGoldenAngle = 137.50776405003785;
constexpr double kGoldenFraction = 0.6180339887498949;

std::string hsl_hex(double hue, double sat, double light) {
  const double c = (1.0 - std::abs(2.0 * light - 1.0)) * sat;
  const double hp = std::fmod(hue, 360.0) / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
  }
  const double m = light - c / 2.0;
  const auto byte = [m](double v) { return static_cast<int>(std::lround(std::clamp(v + m, 0.0, 1.0) * 255.0)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", byte(r), byte(g), byte(b));
  return buf;
}

}  // namespace

std::string lifeline_color(std::size_t band, std::size_t within) {
  const double base = std::fmod(static_cast<double>(band) * kGoldenAngle, 360.0);
  const double spread = std::fmod(static_cast<double>(within) * kGoldenFraction, 1.0);
  const double hue = std::fmod(base + (spread - 0.5) * 50.0 + 360.0, 360.0);
  const double light = 0.38 + 0.24 * std::fmod(static_cast<double>(within) * (1.0 - kGoldenFraction), 1.0);
  return hsl_hex(hue, 0.65, light);
}

StorylineLayout layout(const std::vector<Scene>& scenes, const entities::EntityTable& table,
                       const analytics::Partition& partition, const LayoutConfig& config) {
  validate(config);
  std::unordered_map<std::string, std::size_t> rank;  // table position
  for (std::size_t i = 0; i < table.entities.size(); ++i) rank.emplace(table.entities[i].id, i);

  std::set<std::string> present;
  for (const auto& s : scenes) present.insert(s.entity_ids.begin(), s.entity_ids.end());

  // community id -> members by rank; bands ordered by their best rank.
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (const auto& id : present) {
    const auto r = rank.find(id);
    if (r == rank.end()) throw Error(ErrorCode::consistency, "scene entity '" + id + "' is not in the entity table");
    const auto c = partition.find(id);
    if (c == partition.end()) throw Error(ErrorCode::consistency, "scene entity '" + id + "' is not in the partition");
    groups[c->second].push_back(r->second);
  }
  std::vector<std::vector<std::size_t>> bands;
  for (auto& [c, ranks] : groups) {
    std::sort(ranks.begin(), ranks.end());
    bands.push_back(std::move(ranks));
  }
  std::sort(bands.begin(), bands.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  StorylineLayout out;
  out.granularity = scenes.empty() ? Granularity::paragraph : scenes.front().granularity;
  std::unordered_map<std::string, std::size_t> slot;       // default slot
  std::unordered_map<std::string, std::size_t> lifeline;   // index into out.lifelines
  std::size_t cursor = 0;
  for (std::size_t b = 0; b < bands.size(); ++b) {
    if (b > 0) ++cursor;  // one empty slot between bands
    for (std::size_t w = 0; w < bands[b].size(); ++w) {
      const auto& stats = table.entities[bands[b][w]];
      slot[stats.id] = cursor++;
      lifeline[stats.id] = out.lifelines.size();
      Lifeline l;
      l.entity_id = stats.id;
      l.label = stats.canonical;
      l.community = b;
      l.color_index = out.lifelines.size();
      l.color = lifeline_color(b, w);
      l.width = std::max(1.0, config.width_scale * (1.0 + std::log(static_cast<double>(stats.mention_count))));
      out.lifelines.push_back(std::move(l));
    }
  }

  for (const auto& scene : scenes) {
    SceneBox box{scene, static_cast<double>(scene.scene_index) * config.scene_gap, {}};
    std::vector<std::string> members = scene.entity_ids;
    std::sort(members.begin(), members.end(), [&](const auto& a, const auto& b) { return slot[a] < slot[b]; });
    const std::size_t start = members.empty() ? 0 : slot[members.front()];
    for (std::size_t j = 0; j < members.size(); ++j) {
      Lifeline& l = out.lifelines[lifeline[members[j]]];
      l.anchors.push_back({scene.scene_index, box.x, static_cast<double>(start + j) * config.slot_height});
    }
    const double top = static_cast<double>(start) * config.slot_height;
    const double pad = 0.4 * config.slot_height;
    box.rect = {box.x - 0.3 * config.scene_gap, top - pad, 0.6 * config.scene_gap,
                static_cast<double>(members.empty() ? 0 : members.size() - 1) * config.slot_height + 2.0 * pad};
    out.indicators.push_back({scene.scene_index, box.x, scene.shade});
    out.scenes.push_back(std::move(box));
  }
  for (auto& l : out.lifelines) {
    l.first_scene = l.anchors.front().scene_index;
    l.last_scene = l.anchors.back().scene_index;
  }
  return out;
}

std::vector<Separator> section_boundaries(const text::Document& doc, const std::vector<Scene>& scenes,
                                          const LayoutConfig& config) {
  std::vector<Separator> out;
  std::size_t last = static_cast<std::size_t>(-1);
  for (const auto& scene : scenes) {
    std::size_t paragraph = scene.source_ref;
    if (scene.granularity == Granularity::sentence) {
      const text::Sentence* s = doc.find_sentence(scene.source_ref);
      if (s == nullptr) throw Error(ErrorCode::consistency, "scene refers to missing sentence");
      paragraph = s->paragraph_index;
    }
    const std::size_t section = doc.section_of(paragraph);
    if (section == last || section >= doc.sections.size()) continue;
    last = section;
    out.push_back({scene.scene_index, (static_cast<double>(scene.scene_index) - 0.5) * config.scene_gap,
                   doc.sections[section].title});
  }
  return out;
}

std::vector<std::string> select_entities(const entities::EntityTable& table, const StorylineRequest& request) {
  std::vector<std::string> out;
  if (request.entities.empty()) {
    if (request.entity_cap == 0) throw Error(ErrorCode::parameter, "entity cap must be at least 1");
    const std::size_t n = std::min(request.entity_cap, table.entities.size());
    for (std::size_t i = 0; i < n; ++i) out.push_back(table.entities[i].id);
    return out;
  }
  const std::set<std::string> wanted(request.entities.begin(), request.entities.end());
  for (const auto& id : wanted) {
    if (table.find(id) == nullptr) throw Error(ErrorCode::validation, "unknown entity '" + id + "'");
  }
  for (const auto& e : table.entities)
    if (wanted.contains(e.id)) out.push_back(e.id);
  return out;
}

StorylineLayout build_storyline(const text::Document& doc, const entities::EntityTable& table,
                                const std::vector<comparative::Prediction>& predictions,
                                const StorylineRequest& request) {
  validate(request.config);
  const auto selected = select_entities(table, request);
  std::vector<entities::EntityMention> mentions;
  for (const auto& id : selected) {
    const auto& m = table.find(id)->mentions;
    mentions.insert(mentions.end(), m.begin(), m.end());
  }
  auto scenes = build_scenes(doc, mentions, predictions, request.granularity, selected);

  analytics::Partition partition;
  if (!mentions.empty()) partition = analytics::louvain(analytics::cooccurrence(mentions, analytics::Level::sentence));

  StorylineLayout out = layout(scenes, table, partition, request.config);
  out.granularity = request.granularity;
  out.separators = section_boundaries(doc, scenes, request.config);
  return out;
}

nlohmann::json to_json(const StorylineLayout& layout) {
  nlohmann::json scenes = nlohmann::json::array();
  for (const auto& b : layout.scenes) {
    scenes.push_back({{"i", b.scene.scene_index},
                      {"ref", b.scene.source_ref},
                      {"entities", b.scene.entity_ids},
                      {"shade", b.scene.shade},
                      {"rect", {{"x", b.rect.x}, {"y", b.rect.y}, {"width", b.rect.width}, {"height", b.rect.height}}}});
  }
  nlohmann::json lifelines = nlohmann::json::array();
  for (const auto& l : layout.lifelines) {
    nlohmann::json anchors = nlohmann::json::array();
    for (const auto& a : l.anchors) anchors.push_back({a.x, a.y});
    lifelines.push_back({{"entity", l.entity_id},
                         {"label", l.label},
                         {"community", l.community},
                         {"color_index", l.color_index},
                         {"color", l.color},
                         {"width", l.width},
                         {"span", {l.first_scene, l.last_scene}},
                         {"anchors", std::move(anchors)}});
  }
  nlohmann::json separators = nlohmann::json::array();
  for (const auto& s : layout.separators) separators.push_back({{"x", s.x}, {"title", s.title}});
  nlohmann::json indicators = nlohmann::json::array();
  for (const auto& i : layout.indicators) indicators.push_back({{"x", i.x}, {"shade", i.shade}});
  return {{"version", 1},
          {"granularity", to_string(layout.granularity)},
          {"scenes", std::move(scenes)},
          {"lifelines", std::move(lifelines)},
          {"separators", std::move(separators)},
          {"indicators", std::move(indicators)}};
}

}  // namespace scistory::storyline
