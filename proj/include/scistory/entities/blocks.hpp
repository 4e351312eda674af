#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "scistory/text/document.hpp"

namespace scistory::entities {

inline constexpr std::size_t kDefaultBlockChars = 10000;

struct BlockSegment {
  std::size_t sentence_index = 0;
  std::size_t paragraph_index = 0;
  std::size_t block_start = 0;  // scalars within Block::text
  std::size_t block_end = 0;

  bool operator==(const BlockSegment&) const = default;
};

// Sentences joined by '\n'; the separator counts toward the size budget.
struct Block {
  std::string text;
  std::size_t length = 0;  // in scalars
  std::vector<BlockSegment> segments;

  bool operator==(const Block&) const = default;
};

/// Greedy packing of the document's sentences, in order, into blocks of at
/// most `max_chars` scalars. Throws Error{oversize_sentence} when a single
/// sentence is longer than `max_chars`, Error{parameter} when max_chars is 0.
std::vector<Block> make_blocks(const text::Document& doc, std::size_t max_chars = kDefaultBlockChars);

struct SentenceSpan {
  std::size_t paragraph_index = 0;
  std::size_t sentence_index = 0;
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  bool operator==(const SentenceSpan&) const = default;
};

/// Maps [block_offset, block_offset + length) back to sentence-relative
/// offsets. Throws Error{range} for an empty span or one past the block end,
/// and Error{cross_boundary} when it is not inside a single segment.
SentenceSpan remap(const Block& block, std::size_t block_offset, std::size_t length);

}  // namespace scistory::entities
