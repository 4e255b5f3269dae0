#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "lexitrend/error.hpp"
#include "lexitrend/report.hpp"

namespace lexitrend::report {

namespace {

constexpr double kPanelWidth = 320;
constexpr double kPanelHeight = 220;
constexpr double kPanelGap = 24;
constexpr double kMarginLeft = 48;
constexpr double kMarginTop = 64;
constexpr double kMarginBottom = 28;
constexpr double kPlotLeft = 44;   // inside a panel
constexpr double kPlotTop = 26;
constexpr double kPlotRight = 10;
constexpr double kPlotBottom = 30;

const char* const kPalette[] = {
    "#1f77b4", "#2ca02c", "#d62728", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string fmt_tick(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3g", v);
  return buffer;
}

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct AxisRange {
  double lo = 0;
  double hi = 1;

  double place(double v, double size) const {
    if (hi == lo) return size / 2;
    return (v - lo) / (hi - lo) * size;
  }
};

}  // namespace

std::string render_chart_svg(const ChartSpec& spec,
                             const std::vector<analytics::Series>& series,
                             const std::vector<analytics::CiRow>& ci) {
  if (spec.panels.empty()) {
    throw Error(ErrorCode::EmptyInput, "chart spec has no panels");
  }
  std::map<analytics::SeriesKey, const analytics::Series*> by_key;
  for (const analytics::Series& s : series) by_key[s.key] = &s;
  std::map<analytics::SeriesKey, std::map<int, analytics::CiPoint>> bands;
  for (const analytics::CiRow& row : ci) bands[row.key][row.year] = row.ci;

  for (const ChartSpec::Panel& panel : spec.panels) {
    for (const analytics::SeriesKey& key : panel.series) {
      if (by_key.find(key) == by_key.end()) {
        throw Error(ErrorCode::UnknownSeries,
                    "panel \"" + panel.scope_id + "\" references unknown series " +
                        std::string(analytics::scope_name(key.scope)) + "/" + key.scope_id +
                        "/" + analytics::subject_name(key.subject) + "/" + key.subject_id);
      }
    }
  }

  const std::size_t n_panels = spec.panels.size();
  const std::size_t cols = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n_panels))));
  const std::size_t rows = (n_panels + cols - 1) / cols;
  const double width = kMarginLeft + cols * kPanelWidth + (cols - 1) * kPanelGap + 16;
  const double height = kMarginTop + rows * kPanelHeight + (rows - 1) * kPanelGap + kMarginBottom;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
         fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  svg += "<style>text{font-family:Helvetica,Arial,sans-serif;fill:#222}"
         ".title{font-size:15px;font-weight:bold}.panel-title{font-size:12px;font-weight:bold}"
         ".tick{font-size:9px;fill:#555}.annot{font-size:11px;font-weight:bold}"
         ".ylabel{font-size:10px;fill:#555}.legend{font-size:10px}</style>\n";
  svg += "<rect width=\"" + fmt(width) + "\" height=\"" + fmt(height) + "\" fill=\"#ffffff\"/>\n";
  svg += "<text class=\"title\" x=\"" + fmt(kMarginLeft) + "\" y=\"22\">" +
         escape_xml(spec.title) + "</text>\n";

  // legend: distinct subject ids of the first panel, in panel order
  {
    double lx = kMarginLeft;
    const ChartSpec::Panel& first = spec.panels.front();
    for (std::size_t i = 0; i < first.series.size(); ++i) {
      const std::string& label = first.series[i].subject_id;
      const char* color = kPalette[i % kPaletteSize];
      svg += "<rect x=\"" + fmt(lx) + "\" y=\"32\" width=\"14\" height=\"4\" fill=\"" + color +
             "\"/>\n";
      svg += "<text class=\"legend\" x=\"" + fmt(lx + 18) + "\" y=\"38\">" + escape_xml(label) +
             "</text>\n";
      lx += 26 + 6.2 * static_cast<double>(label.size());
    }
  }

  for (std::size_t index = 0; index < n_panels; ++index) {
    const ChartSpec::Panel& panel = spec.panels[index];
    const double panel_x = kMarginLeft + (index % cols) * (kPanelWidth + kPanelGap);
    const double panel_y = kMarginTop + (index / cols) * (kPanelHeight + kPanelGap);
    const double plot_w = kPanelWidth - kPlotLeft - kPlotRight;
    const double plot_h = kPanelHeight - kPlotTop - kPlotBottom;

    AxisRange x_range;
    AxisRange y_range;
    {
      double x_lo = spec.x_min, x_hi = spec.x_max;
      double y_lo = 0, y_hi = 0;
      bool first_value = true;
      const auto feed = [&](int year, double lo_value, double hi_value) {
        if (spec.x_min == 0) x_lo = first_value ? year : std::min(x_lo, double(year));
        if (spec.x_max == 0) x_hi = first_value ? year : std::max(x_hi, double(year));
        y_lo = first_value ? lo_value : std::min(y_lo, lo_value);
        y_hi = first_value ? hi_value : std::max(y_hi, hi_value);
        first_value = false;
      };
      for (const analytics::SeriesKey& key : panel.series) {
        for (const auto& [year, value] : by_key.at(key)->points) feed(year, value, value);
      }
      if (panel.band) {
        auto it = bands.find(*panel.band);
        if (it != bands.end()) {
          for (const auto& [year, point] : it->second) feed(year, point.lower, point.upper);
        }
      }
      if (first_value) {
        x_lo = spec.x_min == 0 ? 2000 : spec.x_min;
        x_hi = spec.x_max == 0 ? 2001 : spec.x_max;
        y_lo = 0;
        y_hi = 1;
      }
      if (y_hi == y_lo) {
        y_hi += 0.5;
        y_lo -= 0.5;
      } else {
        double pad = (y_hi - y_lo) * 0.05;
        y_hi += pad;
        if (y_lo > 0 && y_lo - pad < 0) {
          y_lo = 0;  // keep a zero baseline when the data allows it
        } else {
          y_lo -= pad;
        }
      }
      x_range = AxisRange{x_lo, x_hi};
      y_range = AxisRange{y_lo, y_hi};
    }

    const auto px = [&](double year) { return kPlotLeft + x_range.place(year, plot_w); };
    const auto py = [&](double value) {
      return kPlotTop + plot_h - y_range.place(value, plot_h);
    };

    svg += "<g transform=\"translate(" + fmt(panel_x) + "," + fmt(panel_y) + ")\">\n";
    svg += "<rect x=\"" + fmt(kPlotLeft) + "\" y=\"" + fmt(kPlotTop) + "\" width=\"" +
           fmt(plot_w) + "\" height=\"" + fmt(plot_h) +
           "\" fill=\"#fafafa\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    svg += "<text class=\"panel-title\" x=\"" + fmt(kPlotLeft) + "\" y=\"16\">" +
           escape_xml(panel.scope_id) + "</text>\n";

    // x ticks: integer years
    {
      int year_lo = static_cast<int>(std::ceil(x_range.lo));
      int year_hi = static_cast<int>(std::floor(x_range.hi));
      int step = std::max(1, (year_hi - year_lo + 5) / 6);
      for (int year = year_lo; year <= year_hi; year += step) {
        double x = px(year);
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kPlotTop + plot_h) + "\" x2=\"" +
               fmt(x) + "\" y2=\"" + fmt(kPlotTop + plot_h + 4) +
               "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
        svg += "<text class=\"tick\" x=\"" + fmt(x - 10) + "\" y=\"" +
               fmt(kPlotTop + plot_h + 14) + "\">" + std::to_string(year) + "</text>\n";
      }
    }
    // y ticks: lo, mid, hi
    for (double frac : {0.0, 0.5, 1.0}) {
      double value = y_range.lo + frac * (y_range.hi - y_range.lo);
      double y = py(value);
      svg += "<line x1=\"" + fmt(kPlotLeft - 4) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
             fmt(kPlotLeft) + "\" y2=\"" + fmt(y) +
             "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
      svg += "<text class=\"tick\" x=\"" + fmt(4.0) + "\" y=\"" + fmt(y + 3) + "\">" +
             fmt_tick(value) + "</text>\n";
    }
    if (!spec.y_label.empty() && index % cols == 0) {
      svg += "<text class=\"ylabel\" transform=\"translate(10," + fmt(kPlotTop + plot_h / 2) +
             ") rotate(-90)\" text-anchor=\"middle\">" + escape_xml(spec.y_label) + "</text>\n";
    }

    // CI band beneath the series lines
    if (panel.band) {
      auto it = bands.find(*panel.band);
      if (it != bands.end() && !it->second.empty()) {
        std::string d;
        bool first_point = true;
        for (const auto& [year, point] : it->second) {
          d += first_point ? "M" : "L";
          d += fmt(px(year)) + "," + fmt(py(point.upper)) + " ";
          first_point = false;
        }
        for (auto rit = it->second.rbegin(); rit != it->second.rend(); ++rit) {
          d += "L" + fmt(px(rit->first)) + "," + fmt(py(rit->second.lower)) + " ";
        }
        d += "Z";
        svg += "<path d=\"" + d + "\" fill=\"#1f77b4\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
      }
    }

    for (std::size_t i = 0; i < panel.series.size(); ++i) {
      const analytics::Series* s = by_key.at(panel.series[i]);
      if (s->points.empty()) continue;
      const char* color = kPalette[i % kPaletteSize];
      const char* dash = (i % 2 == 1) ? " stroke-dasharray=\"5,3\"" : "";
      std::string points_attr;
      for (const auto& [year, value] : s->points) {
        points_attr += fmt(px(year)) + "," + fmt(py(value)) + " ";
      }
      if (s->points.size() == 1) {
        const auto& [year, value] = *s->points.begin();
        svg += "<circle cx=\"" + fmt(px(year)) + "\" cy=\"" + fmt(py(value)) +
               "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
      } else {
        svg += "<polyline points=\"" + points_attr + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"" + dash + "/>\n";
      }
    }

    if (panel.annotation) {
      svg += "<text class=\"annot\" x=\"" + fmt(kPlotLeft + 6) + "\" y=\"" +
             fmt(kPlotTop + 14) + "\">" + escape_xml(*panel.annotation) + "</text>\n";
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace lexitrend::report
