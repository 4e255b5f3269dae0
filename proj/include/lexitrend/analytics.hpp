#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexitrend/counting.hpp"
#include "lexitrend/model.hpp"

namespace lexitrend::analytics {

enum class Scope { Outlet, Country, Region, World };
enum class Subject { Pattern, Group, ConstructAverage };

const char* scope_name(Scope scope);
const char* subject_name(Subject subject);
bool scope_from_name(std::string_view name, Scope& out);
bool subject_from_name(std::string_view name, Subject& out);

struct SeriesKey {
  Scope scope = Scope::Outlet;
  std::string scope_id;
  Subject subject = Subject::Pattern;
  std::string subject_id;

  auto operator<=>(const SeriesKey&) const = default;
};

// Sparse year -> value map. Values are relative frequencies (dimensionless)
// or, for construct-average subjects, min-max scaled values in [0, 1].
struct Series {
  SeriesKey key;
  std::map<int, double> points;

  bool operator==(const Series&) const = default;
};

// -- per-operation primitives ------------------------------------------------

// mentions / total unigrams for one eligible outlet-year.
double relative_frequency(const counting::OutletYearAggregate& aggregate,
                          std::size_t pattern_index);
double group_relative_frequency(const counting::OutletYearAggregate& aggregate,
                                std::span<const std::size_t> member_indices);

struct PooledInput {
  std::uint64_t hits = 0;
  std::uint64_t unigrams = 0;
};

// (sum hits) / (sum unigrams) across the eligible outlets of one scope-year;
// equals the unigram-weighted mean of per-outlet frequencies.
double pool_scope(std::span<const PooledInput> outlets);

// v' = (v - min) / (max - min) over the present years; a constant series
// maps to all zeros.
std::map<int, double> min_max_scale(const std::map<int, double>& points);

// Per-year mean over the member series that have a value that year, then
// min-max scaled again.
std::map<int, double> construct_average(const std::vector<std::map<int, double>>& scaled);

// Centered mean over the years present within the window; the window
// truncates at the range edges and skips missing interior years.
std::map<int, double> moving_average(const std::map<int, double>& points, int window);

struct Differenced {
  std::map<int, double> points;  // keyed by the later year
  std::set<int> gap_years;       // differences spanning a year gap
};

Differenced first_difference(const std::map<int, double>& points);

// Year maximizing the first difference; ties break to the earliest year.
int peak_growth_year(const std::map<int, double>& points);

// Sample Pearson correlation over the common years.
double pearson(const std::map<int, double>& a, const std::map<int, double>& b);

struct CiPoint {
  double mean = 0;
  double lower = 0;
  double upper = 0;
  std::size_t n = 0;
};

// Student-t two-sided interval: mean +/- t(level, n-1) * s / sqrt(n).
CiPoint mean_ci(std::span<const double> values, double level);

// 100 * (v(y1) - v(y0)) / v(y0) on an unsmoothed series.
double percent_change(const std::map<int, double>& points, int y0, int y1);

// -- whole-analysis driver ---------------------------------------------------

enum class PoolingMode { Pooled, Unweighted };

struct CiRow {
  SeriesKey key;
  int year = 0;
  CiPoint ci;
};

struct StatRow {
  Scope scope = Scope::Outlet;
  std::string scope_id;
  std::string stat;  // percent-change | pearson | peak-growth-year
  std::string subject_id;
  double value = 0;
};

struct AnalysisResult {
  std::vector<Series> series;  // sorted by key
  std::vector<CiRow> ci;       // sorted by (key, year)
  std::vector<StatRow> stats;  // sorted by (scope, scope_id, stat, subject_id)
};

// Builds every series the reports consume:
//   - pattern and group relative-frequency series per outlet/country/region/world
//     (unsmoothed; pattern series draw only on outlets of the pattern's language);
//   - construct-average series (min-max per pattern, averaged, re-scaled),
//     smoothed with config.smoothing_window;
//   - t confidence bands across outlets for group series at country and
//     coarser scopes;
//   - stats: percent-change (base->end year, unsmoothed), pearson between
//     construct averages (as plotted), peak-growth-year (unsmoothed
//     construct average).
AnalysisResult analyze(const std::vector<counting::OutletYearAggregate>& aggregates,
                       const std::vector<model::OutletSpec>& registry,
                       const std::vector<model::Construct>& constructs,
                       const model::AnalysisConfig& config, PoolingMode mode);

}  // namespace lexitrend::analytics
