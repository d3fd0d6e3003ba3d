#pragma once

#include <string>
#include <string_view>

// Thin wrappers over ICU character properties, kept out of the public headers
// of the other modules so callers never need ICU includes.
namespace citelink::unicode {

/// Decodes UTF-8; ill-formed sequences become U+FFFD.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view text);

bool is_alphabetic(char32_t c);
bool is_combining_mark(char32_t c);
bool is_latin_script(char32_t c);
/// Alphabetic and written in a script other than Latin.
bool is_non_latin_letter(char32_t c);
char32_t to_lower(char32_t c);

/// Appends the canonical decomposition of `c` (or `c` itself when it has none).
void append_canonical_decomposition(char32_t c, std::u32string &out);

std::size_t length(std::string_view utf8);

} // namespace citelink::unicode
