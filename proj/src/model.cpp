#include "lexitrend/model.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <utility>

#include "lexitrend/csv.hpp"
#include "lexitrend/error.hpp"
#include "lexitrend/path_expr.hpp"
#include "lexitrend/text_norm.hpp"

namespace lexitrend::model {

namespace {

const char* const kRegistryHeader =
    "outlet_id,display_name,country,region,language,headline_path,body_path";
const char* const kLexiconHeader = "construct_id,group_id,language,pattern";

std::string line_prefix(std::size_t line) {
  return "line " + std::to_string(line) + ": ";
}

bool is_slug(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

bool is_language_tag(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '-';
    if (!ok) return false;
  }
  return s.front() != '-' && s.back() != '-';
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c += 0x20;
  }
  return out;
}

std::string upper_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c -= 0x20;
  }
  return out;
}

bool is_comment(const csv::Row& row) {
  return !row.empty() && !row[0].empty() && row[0][0] == '#';
}

void expect_header(const csv::Row& row, std::string_view expected) {
  std::string joined;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) joined.push_back(',');
    joined += row[i];
  }
  if (joined != expected) {
    throw Error(ErrorCode::SchemaMismatch,
                "expected header \"" + std::string(expected) + "\", got \"" + joined + "\"");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

const char* region_name(Region region) {
  switch (region) {
    case Region::EnglishWest: return "EnglishWest";
    case Region::ContinentalEurope: return "ContinentalEurope";
    case Region::GulfRegion: return "GulfRegion";
    case Region::SubSaharanAfrica: return "SubSaharanAfrica";
    case Region::Asia: return "Asia";
    case Region::LatinAmerica: return "LatinAmerica";
  }
  return "?";
}

bool region_from_name(std::string_view name, Region& out) {
  for (Region region : kAllRegions) {
    if (name == region_name(region)) {
      out = region;
      return true;
    }
  }
  return false;
}

std::vector<OutletSpec> parse_outlet_registry(std::string_view text) {
  std::vector<OutletSpec> specs;
  std::set<std::string> seen_ids;
  csv::Reader reader(text);
  csv::Row row;
  bool header_seen = false;
  while (reader.next(row)) {
    if (is_comment(row)) continue;
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    if (!header_seen) {
      expect_header(row, kRegistryHeader);
      header_seen = true;
      continue;
    }
    const std::string at = line_prefix(reader.line());
    if (row.size() != 7) {
      throw Error(ErrorCode::SchemaMismatch,
                  at + "expected 7 fields, got " + std::to_string(row.size()));
    }
    OutletSpec spec;
    spec.outlet_id = row[0];
    spec.display_name = row[1];
    spec.country = upper_ascii(row[2]);
    spec.language = lower_ascii(row[4]);
    spec.headline_path = row[5];
    spec.body_path = row[6];
    if (!is_slug(spec.outlet_id)) {
      throw Error(ErrorCode::ParseError, at + "outlet_id \"" + row[0] + "\" is not a slug");
    }
    if (!seen_ids.insert(spec.outlet_id).second) {
      throw Error(ErrorCode::DuplicateOutletId,
                  at + "duplicate outlet_id \"" + spec.outlet_id + "\"");
    }
    if (spec.country.size() != 2 || !is_slug(spec.country)) {
      throw Error(ErrorCode::ParseError,
                  at + "country \"" + row[2] + "\" is not an ISO 3166-1 alpha-2 code");
    }
    if (!region_from_name(row[3], spec.region)) {
      throw Error(ErrorCode::UnknownRegion, at + "unknown region \"" + row[3] + "\"");
    }
    if (!is_language_tag(spec.language)) {
      throw Error(ErrorCode::ParseError, at + "language \"" + row[4] + "\" is not a BCP-47 tag");
    }
    for (const std::string* path : {&spec.headline_path, &spec.body_path}) {
      try {
        path_expr::PathExpr::parse(*path);
      } catch (const Error& e) {
        throw Error(ErrorCode::MalformedPathExpression, at + e.what());
      }
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::string serialize_outlet_registry(const std::vector<OutletSpec>& specs) {
  std::string out(kRegistryHeader);
  out.push_back('\n');
  for (const OutletSpec& spec : specs) {
    csv::append_row(out, {spec.outlet_id, spec.display_name, spec.country,
                          region_name(spec.region), spec.language, spec.headline_path,
                          spec.body_path});
  }
  return out;
}

std::vector<std::string> registry_warnings(const std::vector<OutletSpec>& specs) {
  std::map<std::string, int> outlets_per_country;
  for (const OutletSpec& spec : specs) ++outlets_per_country[spec.country];
  std::vector<std::string> warnings;
  for (const auto& [country, count] : outlets_per_country) {
    if (count < 2) {
      warnings.push_back("country " + country + " has only " + std::to_string(count) +
                         " outlet(s); the sampling guideline is a minimum of two");
    }
  }
  return warnings;
}

const OutletSpec* find_outlet(const std::vector<OutletSpec>& specs,
                              std::string_view outlet_id) {
  for (const OutletSpec& spec : specs) {
    if (spec.outlet_id == outlet_id) return &spec;
  }
  return nullptr;
}

std::string make_pattern_id(std::string_view construct_id, std::string_view language,
                            const std::vector<std::string>& tokens) {
  std::string id;
  id += construct_id;
  id += ':';
  id += language;
  id += ':';
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) id += '_';
    id += tokens[i];
  }
  return id;
}

int pattern_token_count(std::string_view pattern_id) {
  std::size_t second_colon = pattern_id.find(':');
  if (second_colon != std::string_view::npos) {
    second_colon = pattern_id.find(':', second_colon + 1);
  }
  if (second_colon == std::string_view::npos) {
    throw Error(ErrorCode::SchemaMismatch,
                "malformed pattern id \"" + std::string(pattern_id) + "\"");
  }
  std::string_view tokens = pattern_id.substr(second_colon + 1);
  if (tokens.empty()) {
    throw Error(ErrorCode::SchemaMismatch,
                "malformed pattern id \"" + std::string(pattern_id) + "\"");
  }
  return 1 + static_cast<int>(std::count(tokens.begin(), tokens.end(), '_'));
}

std::vector<Construct> load_lexicon(std::string_view text) {
  std::vector<Construct> constructs;
  std::map<std::string, std::size_t> construct_index;
  std::set<std::string> seen_pattern_keys;  // construct \x1f language \x1f tokens
  csv::Reader reader(text);
  csv::Row row;
  bool header_seen = false;
  while (reader.next(row)) {
    if (is_comment(row)) continue;
    if (row.size() == 1 && row[0].empty()) continue;
    if (!header_seen) {
      expect_header(row, kLexiconHeader);
      header_seen = true;
      continue;
    }
    const std::string at = line_prefix(reader.line());
    if (row.size() != 4) {
      throw Error(ErrorCode::SchemaMismatch,
                  at + "expected 4 fields, got " + std::to_string(row.size()));
    }
    const std::string& construct_id = row[0];
    const std::string& group_id = row[1];
    std::string language = lower_ascii(row[2]);
    if (!is_slug(construct_id)) {
      throw Error(ErrorCode::ParseError, at + "construct_id \"" + construct_id + "\" is not a slug");
    }
    if (!is_slug(group_id)) {
      throw Error(ErrorCode::ParseError, at + "group_id \"" + group_id + "\" is not a slug");
    }
    if (!is_language_tag(language)) {
      throw Error(ErrorCode::ParseError, at + "language \"" + row[2] + "\" is not a BCP-47 tag");
    }
    std::string normalized = counting::normalize(row[3]);
    std::vector<std::string_view> token_views = counting::tokenize(normalized);
    if (token_views.empty()) {
      throw Error(ErrorCode::EmptyConstruct,
                  at + "construct \"" + construct_id + "\" pattern \"" + row[3] +
                      "\" normalizes to zero tokens");
    }
    if (token_views.size() > static_cast<std::size_t>(kMaxPatternTokens)) {
      throw Error(ErrorCode::PatternTooLong,
                  at + "pattern \"" + row[3] + "\" has " + std::to_string(token_views.size()) +
                      " tokens (max " + std::to_string(kMaxPatternTokens) + ")");
    }
    LexiconEntry entry;
    entry.language = language;
    entry.group_id = group_id;
    for (std::string_view token : token_views) entry.tokens.emplace_back(token);

    std::string key = construct_id + '\x1f' + language;
    for (const std::string& token : entry.tokens) key += '\x1f' + token;
    if (!seen_pattern_keys.insert(key).second) {
      throw Error(ErrorCode::DuplicatePattern,
                  at + "duplicate pattern \"" + row[3] + "\" in construct \"" + construct_id +
                      "\" language " + language);
    }

    auto [it, inserted] = construct_index.try_emplace(construct_id, constructs.size());
    if (inserted) constructs.push_back(Construct{construct_id, {}});
    constructs[it->second].entries.push_back(std::move(entry));
  }
  return constructs;
}

std::string serialize_lexicon(const std::vector<Construct>& constructs) {
  std::string out(kLexiconHeader);
  out.push_back('\n');
  for (const Construct& construct : constructs) {
    for (const LexiconEntry& entry : construct.entries) {
      std::string pattern;
      for (std::size_t i = 0; i < entry.tokens.size(); ++i) {
        if (i) pattern.push_back(' ');
        pattern += entry.tokens[i];
      }
      csv::append_row(out, {construct.construct_id, entry.group_id, entry.language, pattern});
    }
  }
  return out;
}

AnalysisConfig parse_analysis_config(std::string_view text) {
  AnalysisConfig config;
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.remove_prefix(3);
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    ++line_number;
    pos = eol + 1;
    if (line.empty() || line.front() == '#') {
      if (eol == text.size()) break;
      continue;
    }
    const std::string at = line_prefix(line_number);
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, at + "expected key=value, got \"" + std::string(line) + "\"");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    const auto parse_int = [&](auto& out) {
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw Error(ErrorCode::ConfigError,
                    at + "invalid value \"" + std::string(value) + "\" for " + std::string(key));
      }
    };
    if (key == "eligibility_threshold") {
      parse_int(config.eligibility_threshold);
    } else if (key == "smoothing_window") {
      parse_int(config.smoothing_window);
    } else if (key == "base_year") {
      parse_int(config.base_year);
    } else if (key == "end_year") {
      parse_int(config.end_year);
    } else if (key == "ci_level") {
      try {
        std::size_t used = 0;
        config.ci_level = std::stod(std::string(value), &used);
        if (used != value.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigError, at + "invalid value \"" + std::string(value) + "\" for ci_level");
      }
    } else {
      throw Error(ErrorCode::ConfigError, at + "unknown key \"" + std::string(key) + "\"");
    }
    if (eol == text.size()) break;
  }
  validate(config);
  return config;
}

void validate(const AnalysisConfig& config) {
  if (config.eligibility_threshold == 0) {
    throw Error(ErrorCode::ConfigError, "eligibility_threshold must be > 0");
  }
  if (config.smoothing_window < 1 || config.smoothing_window % 2 == 0) {
    throw Error(ErrorCode::ConfigError, "smoothing_window must be odd and >= 1");
  }
  if (config.base_year >= config.end_year) {
    throw Error(ErrorCode::ConfigError, "base_year must be before end_year");
  }
  if (!(config.ci_level > 0.0 && config.ci_level < 1.0)) {
    throw Error(ErrorCode::ConfigError, "ci_level must be in (0, 1)");
  }
}

}  // namespace lexitrend::model
