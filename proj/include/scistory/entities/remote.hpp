#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "scistory/entities/blocks.hpp"
#include "scistory/entities/gazetteer.hpp"
#include "scistory/entities/recognize.hpp"

namespace scistory::entities {

// One entity reported by a linking service; offsets in scalars of the block.
struct RemoteSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::string canonical;

  bool operator==(const RemoteSpan&) const = default;
};

class RemoteLinker {
 public:
  virtual ~RemoteLinker() = default;
  virtual std::vector<RemoteSpan> link(const std::string& block_text) = 0;
};

// Wire format of a linker response: [{"offset", "length", "canonical"}].
std::string encode_remote_spans(const std::vector<RemoteSpan>& spans);
std::vector<RemoteSpan> decode_remote_spans(std::string_view body);  // Error{schema}

/// POSTs each block as text/plain to `base_url` + `path` and decodes the
/// JSON reply. Transport failures and non-200 replies raise Error{io}.
class HttpRemoteLinker final : public RemoteLinker {
 public:
  HttpRemoteLinker(std::string base_url, std::string path, int timeout_seconds = 30);
  std::vector<RemoteSpan> link(const std::string& block_text) override;

 private:
  std::string base_url_;
  std::string path_;
  int timeout_seconds_;
};

struct RemoteRecognition {
  std::vector<EntityMention> mentions;
  // Gazetteer extended with an entry for every canonical name not already
  // known; ids for new names are "ext:" + the normalized name.
  Gazetteer gazetteer;
};

/// Sends the document block by block and remaps every returned span into
/// sentence coordinates. Canonical names resolve through `gaz` first.
RemoteRecognition recognize_remote(const text::Document& doc, RemoteLinker& linker, const Gazetteer& gaz,
                                   std::size_t max_chars = kDefaultBlockChars);

}  // namespace scistory::entities
