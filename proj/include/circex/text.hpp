#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace circex::text {

// ASCII-only case folding; manual text and model output are English.
char to_lower(char c) noexcept;
std::string to_lower(std::string_view s);

bool is_alnum(char c) noexcept;

// Maximal runs of [A-Za-z0-9], lowercased. "re-butted" -> {"re", "butted"}.
std::vector<std::string> alnum_tokens(std::string_view s);

// Whitespace-delimited tokens, punctuation kept attached.
std::vector<std::string> whitespace_tokens(std::string_view s);

std::string_view trim(std::string_view s);

// Number of Unicode scalar values; every invalid byte counts as one scalar.
std::size_t utf8_scalar_count(std::string_view s);

// First `limit` scalars of `s`, never splitting a multi-byte sequence.
std::string_view utf8_prefix(std::string_view s, std::size_t limit);

} // namespace circex::text
