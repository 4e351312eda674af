#include "scistory/entities/recognize.hpp"

#include <algorithm>
#include <unordered_map>

#include "scistory/error.hpp"
#include "scistory/text/utf8.hpp"

namespace scistory::entities {

std::vector<EntityMention> recognize(const text::Document& doc, const Gazetteer& gaz) {
  std::vector<EntityMention> out;
  const std::size_t longest = gaz.max_alias_tokens();
  if (longest == 0) return out;
  for (const auto* sentence : doc.sentences()) {
    const auto& toks = sentence->tokens;
    std::vector<std::string> keys;
    keys.reserve(toks.size());
    for (const auto& t : toks) keys.push_back(token_key(t.surface));

    for (std::size_t i = 0; i < toks.size();) {
      std::size_t matched = 0;
      const std::string* id = nullptr;
      for (std::size_t n = std::min(longest, toks.size() - i); n >= 1 && !id; --n) {
        std::string key = keys[i];
        for (std::size_t k = 1; k < n; ++k) key += ' ' + keys[i + k];
        if ((id = gaz.lookup(key))) matched = n;
      }
      if (!id) {
        ++i;
        continue;
      }
      EntityMention m;
      m.entity_id = *id;
      m.paragraph_index = sentence->paragraph_index;
      m.sentence_index = sentence->sentence_index;
      m.char_start = toks[i].char_start;
      m.char_end = toks[i + matched - 1].char_end;
      m.surface = utf8::slice(sentence->text, m.char_start, m.char_end);
      out.push_back(std::move(m));
      i += matched;
    }
  }
  return out;
}

const EntityStats* EntityTable::find(std::string_view id) const {
  for (const auto& e : entities)
    if (e.id == id) return &e;
  return nullptr;
}

std::size_t EntityTable::total_mentions() const {
  std::size_t n = 0;
  for (const auto& e : entities) n += e.mention_count;
  return n;
}

EntityTable consolidate(const std::vector<EntityMention>& mentions, const Gazetteer& gaz) {
  std::unordered_map<std::string, std::size_t> index;
  EntityTable table;
  for (const auto& m : mentions) {
    auto [it, inserted] = index.emplace(m.entity_id, table.entities.size());
    if (inserted) {
      const auto* entry = gaz.find(m.entity_id);
      if (!entry) throw Error(ErrorCode::consistency, "mention refers to unknown entity '" + m.entity_id + "'");
      table.entities.push_back({entry->id, entry->canonical, 0, m.sentence_index, {}});
    }
    auto& stats = table.entities[it->second];
    ++stats.mention_count;
    stats.first_sentence_index = std::min(stats.first_sentence_index, m.sentence_index);
    stats.mentions.push_back(m);
  }
  std::sort(table.entities.begin(), table.entities.end(), [](const EntityStats& a, const EntityStats& b) {
    if (a.mention_count != b.mention_count) return a.mention_count > b.mention_count;
    if (a.first_sentence_index != b.first_sentence_index) return a.first_sentence_index < b.first_sentence_index;
    return a.id < b.id;
  });
  return table;
}

nlohmann::json to_json(const EntityMention& m) {
  return {{"entity_id", m.entity_id},         {"paragraph_index", m.paragraph_index},
          {"sentence_index", m.sentence_index}, {"char_start", m.char_start},
          {"char_end", m.char_end},             {"surface", m.surface}};
}

EntityMention mention_from_json(const nlohmann::json& j) {
  try {
    return {j.at("entity_id").get<std::string>(),   j.at("paragraph_index").get<std::size_t>(),
            j.at("sentence_index").get<std::size_t>(), j.at("char_start").get<std::size_t>(),
            j.at("char_end").get<std::size_t>(),       j.at("surface").get<std::string>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::schema, std::string("mention: ") + e.what());
  }
}

nlohmann::json to_json(const EntityTable& table) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : table.entities)
    arr.push_back({{"id", e.id},
                   {"canonical", e.canonical},
                   {"mention_count", e.mention_count},
                   {"first_sentence_index", e.first_sentence_index}});
  return arr;
}

}  // namespace scistory::entities
