#include "lexitrend/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "lexitrend/error.hpp"

namespace lexitrend::analytics {

const char* scope_name(Scope scope) {
  switch (scope) {
    case Scope::Outlet: return "outlet";
    case Scope::Country: return "country";
    case Scope::Region: return "region";
    case Scope::World: return "world";
  }
  return "?";
}

const char* subject_name(Subject subject) {
  switch (subject) {
    case Subject::Pattern: return "pattern";
    case Subject::Group: return "group";
    case Subject::ConstructAverage: return "construct-average";
  }
  return "?";
}

bool scope_from_name(std::string_view name, Scope& out) {
  for (Scope scope : {Scope::Outlet, Scope::Country, Scope::Region, Scope::World}) {
    if (name == scope_name(scope)) {
      out = scope;
      return true;
    }
  }
  return false;
}

bool subject_from_name(std::string_view name, Subject& out) {
  for (Subject subject : {Subject::Pattern, Subject::Group, Subject::ConstructAverage}) {
    if (name == subject_name(subject)) {
      out = subject;
      return true;
    }
  }
  return false;
}

double relative_frequency(const counting::OutletYearAggregate& aggregate,
                          std::size_t pattern_index) {
  return group_relative_frequency(aggregate, std::span(&pattern_index, 1));
}

double group_relative_frequency(const counting::OutletYearAggregate& aggregate,
                                std::span<const std::size_t> member_indices) {
  if (!aggregate.eligible) {
    throw Error(ErrorCode::IneligibleAggregate,
                aggregate.outlet_id + "/" + std::to_string(aggregate.year) +
                    " is below the eligibility threshold");
  }
  if (aggregate.total_unigrams == 0) {
    throw Error(ErrorCode::ZeroUnigrams,
                aggregate.outlet_id + "/" + std::to_string(aggregate.year) +
                    " has zero unigrams");
  }
  std::uint64_t hits = 0;
  for (std::size_t index : member_indices) hits += aggregate.term_counts.at(index);
  return static_cast<double>(hits) / static_cast<double>(aggregate.total_unigrams);
}

double pool_scope(std::span<const PooledInput> outlets) {
  if (outlets.empty()) {
    throw Error(ErrorCode::NoEligibleOutlets, "no eligible outlet-years to pool");
  }
  std::uint64_t hits = 0;
  std::uint64_t unigrams = 0;
  for (const PooledInput& outlet : outlets) {
    hits += outlet.hits;
    unigrams += outlet.unigrams;
  }
  if (unigrams == 0) {
    throw Error(ErrorCode::ZeroUnigrams, "pooled scope has zero unigrams");
  }
  return static_cast<double>(hits) / static_cast<double>(unigrams);
}

std::map<int, double> min_max_scale(const std::map<int, double>& points) {
  if (points.empty()) {
    throw Error(ErrorCode::EmptySeries, "cannot min-max scale an empty series");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [year, value] : points) {
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  std::map<int, double> scaled;
  if (hi == lo) {
    for (const auto& [year, value] : points) scaled[year] = 0.0;
    return scaled;
  }
  for (const auto& [year, value] : points) scaled[year] = (value - lo) / (hi - lo);
  return scaled;
}

std::map<int, double> construct_average(const std::vector<std::map<int, double>>& scaled) {
  if (scaled.empty()) {
    throw Error(ErrorCode::EmptyInput, "construct average needs at least one series");
  }
  std::map<int, std::pair<double, int>> sums;  // year -> (sum, n)
  for (const auto& series : scaled) {
    for (const auto& [year, value] : series) {
      auto& [sum, n] = sums[year];
      sum += value;
      n += 1;
    }
  }
  std::map<int, double> averaged;
  for (const auto& [year, sum_n] : sums) {
    averaged[year] = sum_n.first / sum_n.second;
  }
  return min_max_scale(averaged);
}

std::map<int, double> moving_average(const std::map<int, double>& points, int window) {
  if (window < 1 || window % 2 == 0) {
    throw Error(ErrorCode::ConfigError, "moving-average window must be odd and >= 1");
  }
  const int half = window / 2;
  std::map<int, double> smoothed;
  for (const auto& [year, value] : points) {
    double sum = 0;
    int n = 0;
    for (auto it = points.lower_bound(year - half);
         it != points.end() && it->first <= year + half; ++it) {
      sum += it->second;
      ++n;
    }
    smoothed[year] = sum / n;
  }
  return smoothed;
}

Differenced first_difference(const std::map<int, double>& points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::TooFewPoints, "first difference needs at least two points");
  }
  Differenced result;
  auto prev = points.begin();
  for (auto it = std::next(points.begin()); it != points.end(); ++it) {
    result.points[it->first] = it->second - prev->second;
    if (it->first - prev->first > 1) result.gap_years.insert(it->first);
    prev = it;
  }
  return result;
}

int peak_growth_year(const std::map<int, double>& points) {
  Differenced diff = first_difference(points);
  int best_year = diff.points.begin()->first;
  double best_value = diff.points.begin()->second;
  for (const auto& [year, value] : diff.points) {
    if (value > best_value) {
      best_value = value;
      best_year = year;
    }
  }
  return best_year;
}

double pearson(const std::map<int, double>& a, const std::map<int, double>& b) {
  std::vector<std::pair<double, double>> common;
  for (const auto& [year, value] : a) {
    auto it = b.find(year);
    if (it != b.end()) common.emplace_back(value, it->second);
  }
  if (common.size() < 2) {
    throw Error(ErrorCode::InsufficientOverlap,
                "pearson needs at least two common years, got " +
                    std::to_string(common.size()));
  }
  double mean_a = 0, mean_b = 0;
  for (const auto& [x, y] : common) {
    mean_a += x;
    mean_b += y;
  }
  mean_a /= common.size();
  mean_b /= common.size();
  double cov = 0, var_a = 0, var_b = 0;
  for (const auto& [x, y] : common) {
    cov += (x - mean_a) * (y - mean_b);
    var_a += (x - mean_a) * (x - mean_a);
    var_b += (y - mean_b) * (y - mean_b);
  }
  if (var_a == 0 || var_b == 0) {
    throw Error(ErrorCode::ZeroVariance, "pearson is undefined for a constant series");
  }
  double r = cov / std::sqrt(var_a * var_b);
  return std::clamp(r, -1.0, 1.0);
}

CiPoint mean_ci(std::span<const double> values, double level) {
  if (values.size() < 2) {
    throw Error(ErrorCode::TooFewOutlets,
                "confidence interval needs n >= 2, got " + std::to_string(values.size()));
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::ConfigError, "confidence level must be in (0, 1)");
  }
  const std::size_t n = values.size();
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / static_cast<double>(n - 1));
  boost::math::students_t_distribution<double> dist(static_cast<double>(n - 1));
  double t = boost::math::quantile(dist, 0.5 + level / 2.0);
  double half_width = t * sd / std::sqrt(static_cast<double>(n));
  return CiPoint{mean, mean - half_width, mean + half_width, n};
}

double percent_change(const std::map<int, double>& points, int y0, int y1) {
  auto it0 = points.find(y0);
  auto it1 = points.find(y1);
  if (it0 == points.end() || it1 == points.end()) {
    int missing = it0 == points.end() ? y0 : y1;
    throw Error(ErrorCode::MissingYear,
                "year " + std::to_string(missing) + " is not present in the series");
  }
  if (it0->second == 0.0) {
    throw Error(ErrorCode::ZeroBaseline,
                "baseline value at year " + std::to_string(y0) + " is zero");
  }
  return 100.0 * (it1->second - it0->second) / it0->second;
}

// -- whole-analysis driver ---------------------------------------------------

namespace {

struct ScopeDef {
  Scope scope;
  std::string scope_id;
  std::vector<const counting::OutletYearAggregate*> members;  // eligible only
};

double unweighted_mean(const std::vector<double>& values) {
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

AnalysisResult analyze(const std::vector<counting::OutletYearAggregate>& aggregates,
                       const std::vector<model::OutletSpec>& registry,
                       const std::vector<model::Construct>& constructs,
                       const model::AnalysisConfig& config, PoolingMode mode) {
  counting::PatternTable table(constructs);

  std::map<std::string, const model::OutletSpec*> outlet_specs;
  for (const model::OutletSpec& spec : registry) outlet_specs[spec.outlet_id] = &spec;

  std::vector<const counting::OutletYearAggregate*> eligible;
  for (const counting::OutletYearAggregate& agg : aggregates) {
    if (outlet_specs.find(agg.outlet_id) == outlet_specs.end()) {
      throw Error(ErrorCode::ParseError,
                  "aggregate references unknown outlet_id \"" + agg.outlet_id + "\"");
    }
    if (agg.term_counts.size() != table.size()) {
      throw Error(ErrorCode::SchemaMismatch,
                  "aggregate pattern counts do not match the lexicon (" +
                      std::to_string(agg.term_counts.size()) + " vs " +
                      std::to_string(table.size()) + ")");
    }
    if (agg.eligible) eligible.push_back(&agg);
  }
  if (eligible.empty()) {
    throw Error(ErrorCode::NoEligibleOutlets, "no eligible outlet-years");
  }

  // scope instances, ordered: outlets, countries, regions, world
  std::vector<ScopeDef> scopes;
  {
    std::map<std::string, ScopeDef> outlets;
    std::map<std::string, ScopeDef> countries;
    std::map<std::string, ScopeDef> regions;
    ScopeDef world{Scope::World, "world", {}};
    for (const counting::OutletYearAggregate* agg : eligible) {
      const model::OutletSpec* spec = outlet_specs[agg->outlet_id];
      auto& outlet = outlets[spec->outlet_id];
      outlet.scope = Scope::Outlet;
      outlet.scope_id = spec->outlet_id;
      outlet.members.push_back(agg);
      auto& country = countries[spec->country];
      country.scope = Scope::Country;
      country.scope_id = spec->country;
      country.members.push_back(agg);
      auto& region = regions[model::region_name(spec->region)];
      region.scope = Scope::Region;
      region.scope_id = model::region_name(spec->region);
      region.members.push_back(agg);
      world.members.push_back(agg);
    }
    for (auto& [id, def] : outlets) scopes.push_back(std::move(def));
    for (auto& [id, def] : countries) scopes.push_back(std::move(def));
    for (auto& [id, def] : regions) scopes.push_back(std::move(def));
    scopes.push_back(std::move(world));
  }

  // group and construct membership over the pattern table
  std::map<std::string, std::vector<std::size_t>> groups;
  std::map<std::string, std::vector<std::size_t>> construct_members;
  std::vector<std::string> construct_order;
  for (std::size_t i = 0; i < table.size(); ++i) {
    groups[table.at(i).group_id].push_back(i);
    auto [it, inserted] = construct_members.try_emplace(table.at(i).construct_id);
    it->second.push_back(i);
  }
  for (const model::Construct& construct : constructs) {
    construct_order.push_back(construct.construct_id);
  }

  const auto outlet_language = [&](const counting::OutletYearAggregate* agg) -> const std::string& {
    return outlet_specs.at(agg->outlet_id)->language;
  };

  // frequency of one pattern in one aggregate, own language only
  const auto pattern_hits = [&](const counting::OutletYearAggregate* agg, std::size_t p) {
    return agg->term_counts[p];
  };
  // group hits draw each outlet's own-language member patterns
  const auto group_hits = [&](const counting::OutletYearAggregate* agg,
                              const std::vector<std::size_t>& members) {
    std::uint64_t hits = 0;
    const std::string& language = outlet_language(agg);
    for (std::size_t p : members) {
      if (table.at(p).language == language) hits += agg->term_counts[p];
    }
    return hits;
  };

  AnalysisResult result;

  for (const ScopeDef& def : scopes) {
    // per-pattern series (language-matching outlets only)
    std::map<std::string, std::map<int, double>> pattern_series;  // pattern_id -> points
    for (std::size_t p = 0; p < table.size(); ++p) {
      const counting::PatternInfo& info = table.at(p);
      std::map<int, std::vector<const counting::OutletYearAggregate*>> by_year;
      for (const counting::OutletYearAggregate* agg : def.members) {
        if (outlet_language(agg) == info.language) by_year[agg->year].push_back(agg);
      }
      if (by_year.empty()) continue;
      std::map<int, double> points;
      for (const auto& [year, members] : by_year) {
        if (mode == PoolingMode::Pooled) {
          std::vector<PooledInput> inputs;
          inputs.reserve(members.size());
          for (const auto* agg : members) {
            inputs.push_back(PooledInput{pattern_hits(agg, p), agg->total_unigrams});
          }
          points[year] = pool_scope(inputs);
        } else {
          std::vector<double> values;
          values.reserve(members.size());
          for (const auto* agg : members) {
            values.push_back(static_cast<double>(pattern_hits(agg, p)) /
                             static_cast<double>(agg->total_unigrams));
          }
          points[year] = unweighted_mean(values);
        }
      }
      pattern_series[info.pattern_id] = points;
      result.series.push_back(
          Series{SeriesKey{def.scope, def.scope_id, Subject::Pattern, info.pattern_id},
                 std::move(points)});
    }

    // per-group series (all outlets; each contributes its own language)
    for (const auto& [group_id, members] : groups) {
      std::map<int, std::vector<const counting::OutletYearAggregate*>> by_year;
      for (const counting::OutletYearAggregate* agg : def.members) {
        by_year[agg->year].push_back(agg);
      }
      std::map<int, double> points;
      for (const auto& [year, year_members] : by_year) {
        if (mode == PoolingMode::Pooled) {
          std::vector<PooledInput> inputs;
          inputs.reserve(year_members.size());
          for (const auto* agg : year_members) {
            inputs.push_back(PooledInput{group_hits(agg, members), agg->total_unigrams});
          }
          points[year] = pool_scope(inputs);
        } else {
          std::vector<double> values;
          values.reserve(year_members.size());
          for (const auto* agg : year_members) {
            values.push_back(static_cast<double>(group_hits(agg, members)) /
                             static_cast<double>(agg->total_unigrams));
          }
          points[year] = unweighted_mean(values);
        }
      }
      // confidence band across outlets, country scope and coarser
      if (def.scope != Scope::Outlet) {
        for (const auto& [year, year_members] : by_year) {
          if (year_members.size() < 2) continue;
          std::vector<double> values;
          values.reserve(year_members.size());
          for (const auto* agg : year_members) {
            values.push_back(static_cast<double>(group_hits(agg, members)) /
                             static_cast<double>(agg->total_unigrams));
          }
          result.ci.push_back(CiRow{SeriesKey{def.scope, def.scope_id, Subject::Group, group_id},
                                    year, mean_ci(values, config.ci_level)});
        }
      }
      // percent change between the configured base and end years
      if (points.count(config.base_year) && points.count(config.end_year) &&
          points.at(config.base_year) > 0.0) {
        result.stats.push_back(StatRow{def.scope, def.scope_id, "percent-change", group_id,
                                       percent_change(points, config.base_year, config.end_year)});
      }
      result.series.push_back(Series{
          SeriesKey{def.scope, def.scope_id, Subject::Group, group_id}, std::move(points)});
    }

    // construct averages: min-max each member pattern, average, re-scale
    std::map<std::string, std::map<int, double>> plotted_averages;
    for (const std::string& construct_id : construct_order) {
      std::vector<std::map<int, double>> scaled;
      for (std::size_t p : construct_members[construct_id]) {
        auto it = pattern_series.find(table.at(p).pattern_id);
        if (it == pattern_series.end() || it->second.empty()) continue;
        scaled.push_back(min_max_scale(it->second));
      }
      if (scaled.empty()) continue;
      std::map<int, double> averaged = construct_average(scaled);
      if (averaged.size() >= 2) {
        result.stats.push_back(StatRow{def.scope, def.scope_id, "peak-growth-year", construct_id,
                                       static_cast<double>(peak_growth_year(averaged))});
      }
      std::map<int, double> smoothed = moving_average(averaged, config.smoothing_window);
      plotted_averages[construct_id] = smoothed;
      result.series.push_back(
          Series{SeriesKey{def.scope, def.scope_id, Subject::ConstructAverage, construct_id},
                 std::move(smoothed)});
    }

    // pearson between plotted construct averages, every unordered pair
    for (auto first = plotted_averages.begin(); first != plotted_averages.end(); ++first) {
      for (auto second = std::next(first); second != plotted_averages.end(); ++second) {
        try {
          double r = pearson(first->second, second->second);
          result.stats.push_back(StatRow{def.scope, def.scope_id, "pearson",
                                         first->first + "~" + second->first, r});
        } catch (const Error&) {
          // undefined for constant or barely-overlapping series: no row
        }
      }
    }
  }

  std::sort(result.series.begin(), result.series.end(),
            [](const Series& a, const Series& b) { return a.key < b.key; });
  std::sort(result.ci.begin(), result.ci.end(), [](const CiRow& a, const CiRow& b) {
    return std::tie(a.key, a.year) < std::tie(b.key, b.year);
  });
  std::sort(result.stats.begin(), result.stats.end(), [](const StatRow& a, const StatRow& b) {
    return std::tie(a.scope, a.scope_id, a.stat, a.subject_id) <
           std::tie(b.scope, b.scope_id, b.stat, b.subject_id);
  });
  return result;
}

}  // namespace lexitrend::analytics
