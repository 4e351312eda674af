#include "scistory/entities/remote.hpp"

#include <httplib.h>

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "scistory/error.hpp"
#include "scistory/text/utf8.hpp"

namespace scistory::entities {

using nlohmann::json;

std::string encode_remote_spans(const std::vector<RemoteSpan>& spans) {
  json arr = json::array();
  for (const auto& s : spans) arr.push_back({{"offset", s.offset}, {"length", s.length}, {"canonical", s.canonical}});
  return arr.dump();
}

std::vector<RemoteSpan> decode_remote_spans(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::schema, std::string("linker response: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::schema, "linker response $: expected array");
  std::vector<RemoteSpan> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto path = "linker response $[" + std::to_string(i) + "]";
    const auto& item = j[i];
    if (!item.is_object()) throw Error(ErrorCode::schema, path + ": expected object");
    for (const char* key : {"offset", "length"})
      if (!item.contains(key) || !item[key].is_number_unsigned())
        throw Error(ErrorCode::schema, path + "." + key + ": expected non-negative integer");
    if (!item.contains("canonical") || !item["canonical"].is_string())
      throw Error(ErrorCode::schema, path + ".canonical: expected string");
    out.push_back({item["offset"].get<std::size_t>(), item["length"].get<std::size_t>(),
                   item["canonical"].get<std::string>()});
  }
  return out;
}

HttpRemoteLinker::HttpRemoteLinker(std::string base_url, std::string path, int timeout_seconds)
    : base_url_(std::move(base_url)), path_(std::move(path)), timeout_seconds_(timeout_seconds) {}

std::vector<RemoteSpan> HttpRemoteLinker::link(const std::string& block_text) {
  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  auto res = client.Post(path_, block_text, "text/plain; charset=utf-8");
  if (!res) throw Error(ErrorCode::io, "linker request to " + base_url_ + path_ + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw Error(ErrorCode::io, "linker at " + base_url_ + path_ + " replied with status " + std::to_string(res->status));
  return decode_remote_spans(res->body);
}

RemoteRecognition recognize_remote(const text::Document& doc, RemoteLinker& linker, const Gazetteer& gaz,
                                   std::size_t max_chars) {
  std::vector<GazetteerEntry> added;
  std::unordered_map<std::string, std::string> new_ids;  // normalized -> id
  RemoteRecognition out;

  for (const auto& block : make_blocks(doc, max_chars)) {
    for (const auto& span : linker.link(block.text)) {
      const auto loc = remap(block, span.offset, span.length);
      const auto* sentence = doc.find_sentence(loc.sentence_index);
      const auto key = normalize_alias(span.canonical);
      std::string id;
      if (const auto* known = gaz.lookup(key)) {
        id = *known;
      } else if (auto it = new_ids.find(key); it != new_ids.end()) {
        id = it->second;
      } else {
        id = "ext:" + key;
        new_ids.emplace(key, id);
        added.push_back({id, span.canonical, {}});
      }
      out.mentions.push_back({id, loc.paragraph_index, loc.sentence_index, loc.char_start, loc.char_end,
                              utf8::slice(sentence->text, loc.char_start, loc.char_end)});
    }
  }
  std::stable_sort(out.mentions.begin(), out.mentions.end(), [](const EntityMention& a, const EntityMention& b) {
    return std::tie(a.sentence_index, a.char_start) < std::tie(b.sentence_index, b.char_start);
  });
  out.gazetteer = added.empty() ? gaz : gaz.merged(added);
  return out;
}

}  // namespace scistory::entities
