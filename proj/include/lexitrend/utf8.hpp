#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace lexitrend::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes the code point starting at text[pos] and advances pos past it.
// Malformed byte sequences decode as kReplacement, advancing one byte.
char32_t decode(std::string_view text, std::size_t& pos);

void append(std::string& out, char32_t cp);

bool is_whitespace(char32_t cp);
bool is_letter(char32_t cp);

inline bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

// Combining diacritical marks (kept inside tokens).
inline bool is_combining_mark(char32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

inline bool is_word_char(char32_t cp) {
  return is_letter(cp) || is_digit(cp) || is_combining_mark(cp);
}

// Simple one-to-one lowercase mapping covering ASCII, Latin-1 Supplement,
// Latin Extended-A, Latin Extended Additional, Greek and Cyrillic.
char32_t to_lower(char32_t cp);

// Precomposed Latin letter for base + combining mark, or 0 when none exists.
char32_t compose(char32_t base, char32_t mark);

}  // namespace lexitrend::utf8
