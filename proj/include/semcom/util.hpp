#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace semcom {

// Bits are stored one per byte, values 0/1. Chosen over std::vector<bool>
// so spans and Eigen maps stay cheap.
using BitVec = std::vector<std::uint8_t>;

namespace utf8 {

// Decodes the codepoint starting at `pos`; advances `pos` past it.
// Malformed bytes are returned as single-byte codepoints so no input is lost.
std::uint32_t decode(std::string_view s, std::size_t& pos);

// Appends `cp` to `out` as UTF-8.
void append(std::string& out, std::uint32_t cp);

// Splits into single-codepoint strings.
std::vector<std::string> codepoints(std::string_view s);

bool is_space(std::uint32_t cp);

}  // namespace utf8

// Whitespace-delimited chunks of `text` (Unicode-aware).
std::vector<std::string> split_whitespace(std::string_view text);

// True if every byte is ASCII punctuation.
bool is_ascii_punct_token(std::string_view token);

// Lowercases ASCII A-Z in place; other bytes pass through untouched.
std::string ascii_lower(std::string_view s);

// FNV-1a 64-bit. Stable across platforms; used for feature hashing.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace semcom
