#pragma once

#include <string>
#include <string_view>

namespace mathreuse::util {

// Offsets everywhere in the toolkit count Unicode scalar values, so documents
// are decoded once on ingestion and re-encoded on output.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view text);
std::string encode_utf8(char32_t c);

inline bool is_ascii_letter(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }
inline bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
inline bool is_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' || c == 0xA0;
}

// Removes every whitespace code point. Used for whitespace-insensitive comparisons.
std::string strip_whitespace(std::string_view utf8);

}  // namespace mathreuse::util
