#include "lexitrend/entities.hpp"

#include <cstdint>
#include <unordered_map>

#include "lexitrend/utf8.hpp"

namespace lexitrend::html {

namespace {

const std::unordered_map<std::string_view, char32_t>& named_entities() {
  static const std::unordered_map<std::string_view, char32_t> table = {
      {"amp", '&'},      {"lt", '<'},       {"gt", '>'},       {"quot", '"'},
      {"apos", '\''},    {"nbsp", 0xA0},    {"shy", 0xAD},     {"copy", 0xA9},
      {"reg", 0xAE},     {"trade", 0x2122}, {"deg", 0xB0},     {"sect", 0xA7},
      {"para", 0xB6},    {"middot", 0xB7},  {"bull", 0x2022},  {"dagger", 0x2020},
      {"Dagger", 0x2021},{"permil", 0x2030},{"hellip", 0x2026},{"mdash", 0x2014},
      {"ndash", 0x2013}, {"lsquo", 0x2018}, {"rsquo", 0x2019}, {"sbquo", 0x201A},
      {"ldquo", 0x201C}, {"rdquo", 0x201D}, {"bdquo", 0x201E}, {"laquo", 0xAB},
      {"raquo", 0xBB},   {"euro", 0x20AC},  {"pound", 0xA3},   {"cent", 0xA2},
      {"yen", 0xA5},     {"times", 0xD7},   {"divide", 0xF7},  {"frac12", 0xBD},
      {"frac14", 0xBC},  {"frac34", 0xBE},  {"sup2", 0xB2},    {"sup3", 0xB3},
      {"iexcl", 0xA1},   {"iquest", 0xBF},  {"szlig", 0xDF},   {"thorn", 0xFE},
      {"THORN", 0xDE},   {"eth", 0xF0},     {"ETH", 0xD0},     {"prime", 0x2032},
      {"Prime", 0x2033}, {"minus", 0x2212}, {"plusmn", 0xB1},  {"micro", 0xB5},
      {"agrave", 0xE0},  {"aacute", 0xE1},  {"acirc", 0xE2},   {"atilde", 0xE3},
      {"auml", 0xE4},    {"aring", 0xE5},   {"aelig", 0xE6},   {"ccedil", 0xE7},
      {"egrave", 0xE8},  {"eacute", 0xE9},  {"ecirc", 0xEA},   {"euml", 0xEB},
      {"igrave", 0xEC},  {"iacute", 0xED},  {"icirc", 0xEE},   {"iuml", 0xEF},
      {"ntilde", 0xF1},  {"ograve", 0xF2},  {"oacute", 0xF3},  {"ocirc", 0xF4},
      {"otilde", 0xF5},  {"ouml", 0xF6},    {"oslash", 0xF8},  {"ugrave", 0xF9},
      {"uacute", 0xFA},  {"ucirc", 0xFB},   {"uuml", 0xFC},    {"yacute", 0xFD},
      {"yuml", 0xFF},    {"oelig", 0x153},  {"OElig", 0x152},  {"scaron", 0x161},
      {"Scaron", 0x160},
      {"Agrave", 0xC0},  {"Aacute", 0xC1},  {"Acirc", 0xC2},   {"Atilde", 0xC3},
      {"Auml", 0xC4},    {"Aring", 0xC5},   {"AElig", 0xC6},   {"Ccedil", 0xC7},
      {"Egrave", 0xC8},  {"Eacute", 0xC9},  {"Ecirc", 0xCA},   {"Euml", 0xCB},
      {"Igrave", 0xCC},  {"Iacute", 0xCD},  {"Icirc", 0xCE},   {"Iuml", 0xCF},
      {"Ntilde", 0xD1},  {"Ograve", 0xD2},  {"Oacute", 0xD3},  {"Ocirc", 0xD4},
      {"Otilde", 0xD5},  {"Ouml", 0xD6},    {"Oslash", 0xD8},  {"Ugrave", 0xD9},
      {"Uacute", 0xDA},  {"Ucirc", 0xDB},   {"Uuml", 0xDC},    {"Yacute", 0xDD},
  };
  return table;
}

bool is_ref_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

}  // namespace

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '&') {
      out.push_back(c);
      ++i;
      continue;
    }
    std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi == i + 1 || semi - i > 12) {
      out.push_back('&');
      ++i;
      continue;
    }
    std::string_view body = text.substr(i + 1, semi - i - 1);
    char32_t cp = 0;
    bool decoded = false;
    if (body[0] == '#') {
      std::uint64_t value = 0;
      bool ok = body.size() > 1;
      std::size_t k = 1;
      int base = 10;
      if (ok && (body[1] == 'x' || body[1] == 'X')) {
        base = 16;
        k = 2;
        ok = body.size() > 2;
      }
      for (; ok && k < body.size(); ++k) {
        char d = body[k];
        int digit;
        if (d >= '0' && d <= '9') digit = d - '0';
        else if (base == 16 && d >= 'a' && d <= 'f') digit = d - 'a' + 10;
        else if (base == 16 && d >= 'A' && d <= 'F') digit = d - 'A' + 10;
        else { ok = false; break; }
        value = value * base + digit;
        if (value > 0x10FFFF) { ok = false; break; }
      }
      if (ok && value > 0 && !(value >= 0xD800 && value <= 0xDFFF)) {
        cp = static_cast<char32_t>(value);
        decoded = true;
      }
    } else {
      bool plausible = true;
      for (char d : body) {
        if (!is_ref_char(d)) { plausible = false; break; }
      }
      if (plausible) {
        auto it = named_entities().find(body);
        if (it != named_entities().end()) {
          cp = it->second;
          decoded = true;
        }
      }
    }
    if (decoded) {
      utf8::append(out, cp);
      i = semi + 1;
    } else {
      out.push_back('&');
      ++i;
    }
  }
  return out;
}

}  // namespace lexitrend::html
