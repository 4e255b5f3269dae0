#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lexitrend::counting {

// Canonical text form used for all matching: NFC composition of combining
// marks, simple lowercase, hyphens and dashes (U+002D, U+2010..U+2015)
// replaced by spaces. Diacritics are preserved.
std::string normalize(std::string_view text);

// Tokens are maximal runs of letters and digits over normalized text.
// Apostrophes (U+0027, U+2019) interior to a run stay inside the token;
// everything else separates tokens. Views point into the input.
std::vector<std::string_view> tokenize(std::string_view normalized);

}  // namespace lexitrend::counting
