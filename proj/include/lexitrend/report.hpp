#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexitrend/analytics.hpp"

namespace lexitrend::report {

// Long-format series CSV: scope,scope_id,subject,subject_id,year,value with
// rows ordered by (scope, scope_id, subject, subject_id, year). Values carry
// 17 significant digits so parse(render(x)) == x.
std::string render_series_csv(const std::vector<analytics::Series>& series);
std::vector<analytics::Series> parse_series_csv(std::string_view text);

// CI CSV adds lower,upper,n columns.
std::string render_ci_csv(const std::vector<analytics::CiRow>& rows);
std::vector<analytics::CiRow> parse_ci_csv(std::string_view text);

// Stats CSV: scope,scope_id,stat,subject_id,value.
std::string render_stats_csv(const std::vector<analytics::StatRow>& rows);
std::vector<analytics::StatRow> parse_stats_csv(std::string_view text);

struct ChartSpec {
  struct Panel {
    std::string scope_id;
    std::vector<analytics::SeriesKey> series;
    std::optional<analytics::SeriesKey> band;  // shaded CI band
    std::optional<std::string> annotation;     // e.g. "r = 0.93", "+180%"
  };

  std::string title;
  std::string y_label;
  int x_min = 0;  // 0 = derive from the plotted data
  int x_max = 0;
  std::vector<Panel> panels;
};

// Deterministic standalone SVG: one subplot per panel in a grid, one line
// per series, optional CI band polygon beneath the lines, annotation at the
// panel top-left. Throws UnknownSeries when a referenced series is absent.
std::string render_chart_svg(const ChartSpec& spec,
                             const std::vector<analytics::Series>& series,
                             const std::vector<analytics::CiRow>& ci);

// CLI driver; returns the process exit code (0 ok, 2 config error, 3 parse
// error, 4 invariant violation, 5 insufficient data).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexitrend::report
