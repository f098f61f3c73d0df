#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace appemo::text {

// Decodes one UTF-8 scalar at `pos`. Invalid or truncated sequences decode
// as a single byte (value 0xFFFD) so scanning always makes progress.
struct Decoded {
  char32_t cp;
  std::size_t length;
};
Decoded decode_utf8(std::string_view s, std::size_t pos);

bool is_unicode_space(char32_t cp);
bool is_ascii_punct(char32_t cp);
bool is_ascii_alnum(char32_t cp);

// Number of UTF-8 scalars in `s`.
std::size_t codepoint_length(std::string_view s);

std::string ascii_lower(std::string_view s);
std::string_view trim(std::string_view s);

}  // namespace appemo::text
