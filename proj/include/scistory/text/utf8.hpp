#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Offsets throughout the library count Unicode scalar values. These helpers
// convert between UTF-8 storage and scalar-indexed views.
namespace scistory::utf8 {

// Invalid sequences decode to U+FFFD.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

std::size_t length(std::string_view text);

// Substring by scalar offsets, half-open [start, end). Clamped to the text.
std::string slice(std::string_view text, std::size_t start, std::size_t end);

bool is_space(char32_t cp) noexcept;
bool is_control(char32_t cp) noexcept;
bool is_alpha(char32_t cp) noexcept;
bool is_digit(char32_t cp) noexcept;
bool is_upper(char32_t cp) noexcept;
bool is_lower(char32_t cp) noexcept;

// ASCII-only case mapping; other scalars pass through unchanged.
std::string to_lower(std::string_view text);

}  // namespace scistory::utf8
