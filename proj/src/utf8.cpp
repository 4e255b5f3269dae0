#include "lexitrend/utf8.hpp"

#include <unordered_map>

namespace lexitrend::utf8 {

char32_t decode(std::string_view text, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kReplacement;
  }
  if (pos + len > text.size()) {
    ++pos;
    return kReplacement;
  }
  for (int i = 1; i < len; ++i) {
    unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  // reject overlong forms and surrogates
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
      (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
    ++pos;
    return kReplacement;
  }
  pos += len;
  return cp;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (cp >= 0xC0 && cp <= 0x2FF) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x370 && cp <= 0x3FF) return cp != 0x37E;  // Greek question mark
  if (cp >= 0x400 && cp <= 0x52F) return true;         // Cyrillic
  if (cp >= 0x530 && cp <= 0x58F) return true;         // Armenian
  if (cp >= 0x5B0 && cp <= 0x5F2) return true;         // Hebrew letters + points
  if (cp >= 0x620 && cp <= 0x64A) return true;         // Arabic letters
  if (cp >= 0x660 && cp <= 0x669) return true;         // Arabic-Indic digits
  if (cp >= 0x670 && cp <= 0x6D3) return true;
  if (cp >= 0x900 && cp <= 0x9FF) return true;         // Devanagari, Bengali
  if (cp >= 0xE01 && cp <= 0xE5B) return true;         // Thai
  if (cp >= 0x1100 && cp <= 0x11FF) return true;       // Hangul jamo
  if (cp >= 0x1E00 && cp <= 0x1FFF) return true;       // Latin/Greek extended
  if (cp >= 0x2C60 && cp <= 0x2C7F) return true;
  if (cp >= 0x3040 && cp <= 0x30FF) return true;       // kana
  if (cp >= 0x3400 && cp <= 0x4DBF) return true;
  if (cp >= 0x4E00 && cp <= 0x9FFF) return true;       // CJK
  if (cp >= 0xA720 && cp <= 0xA7FF) return true;
  if (cp >= 0xAC00 && cp <= 0xD7A3) return true;       // Hangul syllables
  if (cp >= 0xF900 && cp <= 0xFAFF) return true;
  return false;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp == 0x130) return 'i';
  if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x1E00 && cp <= 0x1E95) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x1E9E) return 0xDF;
  if (cp >= 0x1EA0 && cp <= 0x1EFF) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x386) return 0x3AC;
  if (cp >= 0x388 && cp <= 0x38A) return cp + 0x25;
  if (cp == 0x38C) return 0x3CC;
  if (cp == 0x38E) return 0x3CD;
  if (cp == 0x38F) return 0x3CE;
  if (cp >= 0x391 && cp <= 0x3A1) return cp + 0x20;
  if (cp >= 0x3A3 && cp <= 0x3AB) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  return cp;
}

namespace {

struct Composition {
  char32_t base;
  char32_t mark;
  char32_t composed;
};

// Common Latin compositions; enough to canonicalize decomposed input in the
// corpus languages (en, es, fr, de, sv, it, pt).
constexpr Composition kCompositions[] = {
    // grave U+0300
    {'A', 0x300, 0xC0}, {'E', 0x300, 0xC8}, {'I', 0x300, 0xCC}, {'O', 0x300, 0xD2},
    {'U', 0x300, 0xD9}, {'a', 0x300, 0xE0}, {'e', 0x300, 0xE8}, {'i', 0x300, 0xEC},
    {'o', 0x300, 0xF2}, {'u', 0x300, 0xF9},
    // acute U+0301
    {'A', 0x301, 0xC1}, {'C', 0x301, 0x106}, {'E', 0x301, 0xC9}, {'I', 0x301, 0xCD},
    {'N', 0x301, 0x143}, {'O', 0x301, 0xD3}, {'S', 0x301, 0x15A}, {'U', 0x301, 0xDA},
    {'Y', 0x301, 0xDD}, {'Z', 0x301, 0x179},
    {'a', 0x301, 0xE1}, {'c', 0x301, 0x107}, {'e', 0x301, 0xE9}, {'i', 0x301, 0xED},
    {'n', 0x301, 0x144}, {'o', 0x301, 0xF3}, {'s', 0x301, 0x15B}, {'u', 0x301, 0xFA},
    {'y', 0x301, 0xFD}, {'z', 0x301, 0x17A},
    // circumflex U+0302
    {'A', 0x302, 0xC2}, {'E', 0x302, 0xCA}, {'I', 0x302, 0xCE}, {'O', 0x302, 0xD4},
    {'U', 0x302, 0xDB}, {'a', 0x302, 0xE2}, {'e', 0x302, 0xEA}, {'i', 0x302, 0xEE},
    {'o', 0x302, 0xF4}, {'u', 0x302, 0xFB},
    // tilde U+0303
    {'A', 0x303, 0xC3}, {'N', 0x303, 0xD1}, {'O', 0x303, 0xD5},
    {'a', 0x303, 0xE3}, {'n', 0x303, 0xF1}, {'o', 0x303, 0xF5},
    // macron U+0304
    {'A', 0x304, 0x100}, {'E', 0x304, 0x112}, {'I', 0x304, 0x12A}, {'O', 0x304, 0x14C},
    {'U', 0x304, 0x16A}, {'a', 0x304, 0x101}, {'e', 0x304, 0x113}, {'i', 0x304, 0x12B},
    {'o', 0x304, 0x14D}, {'u', 0x304, 0x16B},
    // diaeresis U+0308
    {'A', 0x308, 0xC4}, {'E', 0x308, 0xCB}, {'I', 0x308, 0xCF}, {'O', 0x308, 0xD6},
    {'U', 0x308, 0xDC}, {'Y', 0x308, 0x178}, {'a', 0x308, 0xE4}, {'e', 0x308, 0xEB},
    {'i', 0x308, 0xEF}, {'o', 0x308, 0xF6}, {'u', 0x308, 0xFC}, {'y', 0x308, 0xFF},
    // ring above U+030A
    {'A', 0x30A, 0xC5}, {'a', 0x30A, 0xE5},
    // caron U+030C
    {'C', 0x30C, 0x10C}, {'S', 0x30C, 0x160}, {'Z', 0x30C, 0x17D},
    {'c', 0x30C, 0x10D}, {'s', 0x30C, 0x161}, {'z', 0x30C, 0x17E},
    // cedilla U+0327
    {'C', 0x327, 0xC7}, {'c', 0x327, 0xE7},
};

}  // namespace

char32_t compose(char32_t base, char32_t mark) {
  static const auto* table = [] {
    auto* m = new std::unordered_map<std::uint64_t, char32_t>();
    for (const auto& c : kCompositions) {
      (*m)[(static_cast<std::uint64_t>(c.base) << 32) | c.mark] = c.composed;
    }
    return m;
  }();
  auto it = table->find((static_cast<std::uint64_t>(base) << 32) | mark);
  return it == table->end() ? 0 : it->second;
}

}  // namespace lexitrend::utf8
