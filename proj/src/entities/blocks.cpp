#include "scistory/entities/blocks.hpp"

#include <algorithm>

#include "scistory/error.hpp"
#include "scistory/text/utf8.hpp"

namespace scistory::entities {

std::vector<Block> make_blocks(const text::Document& doc, std::size_t max_chars) {
  if (max_chars == 0) throw Error(ErrorCode::parameter, "max_chars must be positive");
  std::vector<Block> blocks;
  for (const auto* s : doc.sentences()) {
    const std::size_t len = utf8::length(s->text);
    if (len > max_chars)
      throw Error(ErrorCode::oversize_sentence, "sentence " + std::to_string(s->sentence_index) + " has " +
                                                    std::to_string(len) + " characters, block limit is " +
                                                    std::to_string(max_chars));
    if (blocks.empty() || blocks.back().length + 1 + len > max_chars) {
      blocks.emplace_back();
    } else {
      blocks.back().text += '\n';
      blocks.back().length += 1;
    }
    Block& b = blocks.back();
    b.segments.push_back({s->sentence_index, s->paragraph_index, b.length, b.length + len});
    b.text += s->text;
    b.length += len;
  }
  return blocks;
}

SentenceSpan remap(const Block& block, std::size_t block_offset, std::size_t length) {
  if (length == 0) throw Error(ErrorCode::range, "span length must be positive");
  if (block_offset >= block.length || length > block.length - block_offset)
    throw Error(ErrorCode::range, "span [" + std::to_string(block_offset) + ", +" + std::to_string(length) +
                                      ") exceeds block length " + std::to_string(block.length));
  // Last segment starting at or before the offset.
  auto it = std::upper_bound(block.segments.begin(), block.segments.end(), block_offset,
                             [](std::size_t off, const BlockSegment& seg) { return off < seg.block_start; });
  if (it == block.segments.begin()) throw Error(ErrorCode::cross_boundary, "span starts before the first segment");
  const BlockSegment& seg = *std::prev(it);
  if (block_offset >= seg.block_end || block_offset + length > seg.block_end)
    throw Error(ErrorCode::cross_boundary, "span [" + std::to_string(block_offset) + ", +" + std::to_string(length) +
                                               ") crosses a sentence boundary");
  return {seg.paragraph_index, seg.sentence_index, block_offset - seg.block_start,
          block_offset - seg.block_start + length};
}

}  // namespace scistory::entities
