#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace binet {

// Decoding is total: malformed UTF-8 bytes come back as single code points,
// so token processing never fails on raw corpus data.
std::vector<char32_t> utf8_codepoints(std::string_view s);

// Byte offset of each code point start, with s.size() appended; size is
// utf8_length(s) + 1.
std::vector<std::size_t> utf8_offsets(std::string_view s);

std::size_t utf8_length(std::string_view s);

bool is_ascii(std::string_view s);

// ASCII-only lowercasing; non-ASCII bytes pass through unchanged.
std::string ascii_lower(std::string_view s);

std::vector<std::string_view> split_whitespace(std::string_view s);

// Splits on '\t', keeping empty fields.
std::vector<std::string_view> split_tabs(std::string_view line);

// Corpus files separate tokens with spaces; a literal space inside a token
// is written as the two-byte sequence "\_".
std::string unescape_token(std::string_view field);
std::string escape_token(std::string_view token);

}  // namespace binet
