#pragma once

#include <string>
#include <string_view>

namespace lexitrend::html {

// Decodes named and numeric character references. Unknown or unterminated
// references pass through verbatim.
std::string decode_entities(std::string_view text);

}  // namespace lexitrend::html
