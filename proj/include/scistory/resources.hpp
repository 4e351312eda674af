#pragma once

#include <string>
#include <string_view>

// Data files under data/ are compiled into the library so the pure text
// functions work without touching the filesystem. The same files can be
// edited and passed explicitly by path.
namespace scistory::resources {

std::string_view abbreviations();
std::string_view pos_lexicon();
std::string_view comparative_keywords();
std::string_view comparative_corpus();
std::string_view seed_gazetteer();

// Throws Error{io} when the file cannot be read.
std::string read_file(const std::string& path);

// Atomically replaces `path` (write to a sibling temp file, then rename).
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace scistory::resources
