#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "scistory/text/document.hpp"

namespace scistory::entities {

struct GazetteerEntry {
  std::string id;
  std::string canonical;
  std::vector<std::string> aliases;

  bool operator==(const GazetteerEntry&) const = default;
};

// Matching key of one token: the surface itself for acronyms (2-6 chars,
// uppercase letters and digits with at least two letters), otherwise the
// lowercased Porter stem.
std::string token_key(std::string_view surface);
bool is_acronym(std::string_view surface);

// Space-joined token keys of a phrase, tokenized like sentence text.
std::string normalize_alias(std::string_view alias);

/// Alias table linking variant surface forms to one entity id.
///
/// The canonical name always counts as an alias. Construction throws
/// Error{validation} for an empty or duplicate id, an empty canonical name,
/// or a normalized alias claimed by two different entities.
class Gazetteer {
 public:
  Gazetteer() = default;
  explicit Gazetteer(std::vector<GazetteerEntry> entries);

  static Gazetteer from_json(const nlohmann::json& j);  // Error{schema} on bad shape
  static Gazetteer parse(std::string_view json_text);
  static Gazetteer from_file(const std::string& path);
  static const Gazetteer& bundled();

  nlohmann::json to_json() const;

  const std::vector<GazetteerEntry>& entries() const noexcept { return entries_; }
  const GazetteerEntry* find(std::string_view id) const;
  // Entity id for a normalized key, if any.
  const std::string* lookup(const std::string& normalized) const;
  // Longest alias length in tokens.
  std::size_t max_alias_tokens() const noexcept { return max_tokens_; }

  // Copy with `updates` applied: same-id entries are replaced, new ones appended.
  Gazetteer merged(const std::vector<GazetteerEntry>& updates) const;

  bool operator==(const Gazetteer& other) const { return entries_ == other.entries_; }

 private:
  std::vector<GazetteerEntry> entries_;
  std::unordered_map<std::string, std::string> alias_to_id_;
  std::unordered_map<std::string, std::size_t> id_to_index_;
  std::size_t max_tokens_ = 0;
};

}  // namespace scistory::entities
