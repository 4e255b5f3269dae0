#include "lexitrend/text_norm.hpp"

#include <vector>

#include "lexitrend/utf8.hpp"

namespace lexitrend::counting {

namespace {

bool is_hyphen(char32_t cp) {
  return cp == 0x2D || (cp >= 0x2010 && cp <= 0x2015);
}

}  // namespace

std::string normalize(std::string_view text) {
  std::vector<char32_t> cps;
  cps.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = utf8::decode(text, pos);
    if (utf8::is_combining_mark(cp) && !cps.empty()) {
      if (char32_t composed = utf8::compose(cps.back(), cp)) {
        cps.back() = composed;
        continue;
      }
    }
    cps.push_back(cp);
  }
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : cps) {
    if (is_hyphen(cp)) {
      out.push_back(' ');
    } else {
      utf8::append(out, utf8::to_lower(cp));
    }
  }
  return out;
}

std::vector<std::string_view> tokenize(std::string_view normalized) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  std::size_t token_start = 0;
  bool in_token = false;
  const auto flush = [&](std::size_t end) {
    if (in_token && end > token_start) {
      tokens.push_back(normalized.substr(token_start, end - token_start));
    }
    in_token = false;
  };
  while (pos < normalized.size()) {
    std::size_t cp_start = pos;
    char32_t cp = utf8::decode(normalized, pos);
    if (utf8::is_word_char(cp)) {
      if (!in_token) {
        token_start = cp_start;
        in_token = true;
      }
      continue;
    }
    if (in_token && (cp == 0x27 || cp == 0x2019)) {
      // interior apostrophe: only if a word character follows immediately
      std::size_t peek = pos;
      if (peek < normalized.size() && utf8::is_word_char(utf8::decode(normalized, peek))) {
        continue;
      }
    }
    flush(cp_start);
  }
  flush(normalized.size());
  return tokens;
}

}  // namespace lexitrend::counting
