#include "scistory/entities/gazetteer.hpp"

#include <algorithm>

#include "scistory/error.hpp"
#include "scistory/resources.hpp"
#include "scistory/text/annotate.hpp"
#include "scistory/text/porter.hpp"
#include "scistory/text/utf8.hpp"

namespace scistory::entities {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::schema, "gazetteer " + path + ": " + what);
}

std::size_t count_tokens(const std::string& normalized) {
  return normalized.empty() ? 0 : 1 + static_cast<std::size_t>(std::count(normalized.begin(), normalized.end(), ' '));
}

}  // namespace

bool is_acronym(std::string_view surface) {
  if (surface.size() < 2 || surface.size() > 6) return false;
  std::size_t upper = 0;
  for (char c : surface) {
    if (c >= 'A' && c <= 'Z') {
      ++upper;
    } else if (!(c >= '0' && c <= '9')) {
      return false;
    }
  }
  return upper >= 2;
}

std::string token_key(std::string_view surface) {
  return is_acronym(surface) ? std::string(surface) : text::stem(surface);
}

std::string normalize_alias(std::string_view alias) {
  const auto u = utf8::decode(alias);
  std::string out;
  for (const auto& span : text::tokenize(u)) {
    if (!out.empty()) out += ' ';
    out += token_key(utf8::encode(std::u32string_view(u).substr(span.start, span.end - span.start)));
  }
  return out;
}

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& e = entries_[i];
    if (e.id.empty()) throw Error(ErrorCode::validation, "gazetteer entry " + std::to_string(i) + " has an empty id");
    if (e.canonical.empty()) throw Error(ErrorCode::validation, "gazetteer entry '" + e.id + "' has an empty canonical name");
    if (!id_to_index_.emplace(e.id, i).second)
      throw Error(ErrorCode::validation, "duplicate gazetteer id '" + e.id + "'");
    if (std::find(e.aliases.begin(), e.aliases.end(), e.canonical) == e.aliases.end())
      e.aliases.insert(e.aliases.begin(), e.canonical);
    for (const auto& alias : e.aliases) {
      const auto key = normalize_alias(alias);
      if (key.empty()) throw Error(ErrorCode::validation, "gazetteer entry '" + e.id + "' has an empty alias");
      auto [it, inserted] = alias_to_id_.emplace(key, e.id);
      if (!inserted && it->second != e.id)
        throw Error(ErrorCode::validation,
                    "alias '" + alias + "' of '" + e.id + "' collides with an alias of '" + it->second + "'");
      max_tokens_ = std::max(max_tokens_, count_tokens(key));
    }
  }
}

Gazetteer Gazetteer::from_json(const json& j) {
  if (!j.is_array()) schema_error("$", "expected array");
  std::vector<GazetteerEntry> entries;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto path = "$[" + std::to_string(i) + "]";
    const auto& item = j[i];
    if (!item.is_object()) schema_error(path, "expected object");
    GazetteerEntry e;
    for (const char* key : {"id", "canonical"}) {
      auto it = item.find(key);
      if (it == item.end() || !it->is_string()) schema_error(path + "." + key, "expected string");
    }
    e.id = item["id"].get<std::string>();
    e.canonical = item["canonical"].get<std::string>();
    if (auto it = item.find("aliases"); it != item.end()) {
      if (!it->is_array()) schema_error(path + ".aliases", "expected array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        if (!(*it)[k].is_string()) schema_error(path + ".aliases[" + std::to_string(k) + "]", "expected string");
        e.aliases.push_back((*it)[k].get<std::string>());
      }
    }
    entries.push_back(std::move(e));
  }
  return Gazetteer(std::move(entries));
}

Gazetteer Gazetteer::parse(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("gazetteer: ") + e.what());
  }
  return from_json(j);
}

Gazetteer Gazetteer::from_file(const std::string& path) { return parse(resources::read_file(path)); }

const Gazetteer& Gazetteer::bundled() {
  static const Gazetteer gaz = parse(resources::seed_gazetteer());
  return gaz;
}

json Gazetteer::to_json() const {
  json arr = json::array();
  for (const auto& e : entries_) arr.push_back({{"id", e.id}, {"canonical", e.canonical}, {"aliases", e.aliases}});
  return arr;
}

const GazetteerEntry* Gazetteer::find(std::string_view id) const {
  auto it = id_to_index_.find(std::string(id));
  return it == id_to_index_.end() ? nullptr : &entries_[it->second];
}

const std::string* Gazetteer::lookup(const std::string& normalized) const {
  auto it = alias_to_id_.find(normalized);
  return it == alias_to_id_.end() ? nullptr : &it->second;
}

Gazetteer Gazetteer::merged(const std::vector<GazetteerEntry>& updates) const {
  auto entries = entries_;
  for (const auto& u : updates) {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const GazetteerEntry& e) { return e.id == u.id; });
    if (it != entries.end()) {
      *it = u;
    } else {
      entries.push_back(u);
    }
  }
  return Gazetteer(std::move(entries));
}

}  // namespace scistory::entities
