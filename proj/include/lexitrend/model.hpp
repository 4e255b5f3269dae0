#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lexitrend::model {

inline constexpr int kMaxPatternTokens = 4;

enum class Region {
  EnglishWest,
  ContinentalEurope,
  GulfRegion,
  SubSaharanAfrica,
  Asia,
  LatinAmerica,
};

inline constexpr Region kAllRegions[] = {
    Region::EnglishWest,      Region::ContinentalEurope, Region::GulfRegion,
    Region::SubSaharanAfrica, Region::Asia,              Region::LatinAmerica,
};

const char* region_name(Region region);
bool region_from_name(std::string_view name, Region& out);

struct OutletSpec {
  std::string outlet_id;      // unique slug
  std::string display_name;
  std::string country;        // ISO 3166-1 alpha-2, uppercase
  Region region;
  std::string language;       // BCP-47, lowercased
  std::string headline_path;
  std::string body_path;

  bool operator==(const OutletSpec&) const = default;
};

// Registry file: CSV with header
//   outlet_id,display_name,country,region,language,headline_path,body_path
// Lines whose first field starts with '#' are comments.
std::vector<OutletSpec> parse_outlet_registry(std::string_view text);
std::string serialize_outlet_registry(const std::vector<OutletSpec>& specs);

// Flags (does not reject) countries with fewer than two outlets.
std::vector<std::string> registry_warnings(const std::vector<OutletSpec>& specs);

const OutletSpec* find_outlet(const std::vector<OutletSpec>& specs,
                              std::string_view outlet_id);

struct LexiconEntry {
  std::string language;             // lowercased tag
  std::string group_id;             // prejudice/social-justice group
  std::vector<std::string> tokens;  // normalized, 1..kMaxPatternTokens

  bool operator==(const LexiconEntry&) const = default;
};

struct Construct {
  std::string construct_id;
  std::vector<LexiconEntry> entries;

  bool operator==(const Construct&) const = default;
};

// Stable identifier used as counts-CSV column name:
//   construct_id ":" language ":" tokens joined by "_"
std::string make_pattern_id(std::string_view construct_id, std::string_view language,
                            const std::vector<std::string>& tokens);

// Token count of a pattern recovered from its id.
int pattern_token_count(std::string_view pattern_id);

// Lexicon file: CSV with header construct_id,group_id,language,pattern.
// Patterns are normalized before storage; duplicates within one
// (construct, language) are rejected.
std::vector<Construct> load_lexicon(std::string_view text);
std::string serialize_lexicon(const std::vector<Construct>& constructs);

struct AnalysisConfig {
  std::uint64_t eligibility_threshold = 250000;
  int smoothing_window = 3;
  int base_year = 2010;
  int end_year = 2021;
  double ci_level = 0.95;

  bool operator==(const AnalysisConfig&) const = default;
};

// key=value lines; '#' comments and blank lines ignored; unknown keys rejected.
AnalysisConfig parse_analysis_config(std::string_view text);
void validate(const AnalysisConfig& config);

}  // namespace lexitrend::model
