#include <charconv>
#include <cstdio>

#include "lexitrend/csv.hpp"
#include "lexitrend/error.hpp"
#include "lexitrend/report.hpp"

namespace lexitrend::report {

namespace {

std::string format_value(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

double parse_value(std::string_view field, std::size_t line) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": invalid value \"" +
                                           std::string(field) + "\"");
  }
  return value;
}

int parse_year_field(std::string_view field, std::size_t line) {
  int year = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), year);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": invalid year \"" +
                                           std::string(field) + "\"");
  }
  return year;
}

analytics::SeriesKey parse_key(const csv::Row& row, std::size_t line) {
  analytics::SeriesKey key;
  if (!analytics::scope_from_name(row[0], key.scope)) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": unknown scope \"" + row[0] + "\"");
  }
  key.scope_id = row[1];
  if (!analytics::subject_from_name(row[2], key.subject)) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": unknown subject \"" + row[2] + "\"");
  }
  key.subject_id = row[3];
  return key;
}

void expect_exact_header(csv::Reader& reader, csv::Row& row, std::string_view expected) {
  if (!reader.next(row)) {
    throw Error(ErrorCode::SchemaMismatch, "file is empty, expected header \"" +
                                               std::string(expected) + "\"");
  }
  std::string joined;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) joined.push_back(',');
    joined += row[i];
  }
  if (joined != expected) {
    throw Error(ErrorCode::SchemaMismatch, "expected header \"" + std::string(expected) +
                                               "\", got \"" + joined + "\"");
  }
}

bool is_blank(const csv::Row& row) { return row.size() == 1 && row[0].empty(); }

}  // namespace

std::string render_series_csv(const std::vector<analytics::Series>& series) {
  std::string out = "scope,scope_id,subject,subject_id,year,value\n";
  for (const analytics::Series& s : series) {
    for (const auto& [year, value] : s.points) {
      csv::append_row(out, {analytics::scope_name(s.key.scope), s.key.scope_id,
                            analytics::subject_name(s.key.subject), s.key.subject_id,
                            std::to_string(year), format_value(value)});
    }
  }
  return out;
}

std::vector<analytics::Series> parse_series_csv(std::string_view text) {
  std::vector<analytics::Series> series;
  csv::Reader reader(text);
  csv::Row row;
  expect_exact_header(reader, row, "scope,scope_id,subject,subject_id,year,value");
  while (reader.next(row)) {
    if (is_blank(row)) continue;
    const std::size_t line = reader.line();
    if (row.size() != 6) {
      throw Error(ErrorCode::SchemaMismatch,
                  "line " + std::to_string(line) + ": expected 6 fields, got " +
                      std::to_string(row.size()));
    }
    analytics::SeriesKey key = parse_key(row, line);
    int year = parse_year_field(row[4], line);
    double value = parse_value(row[5], line);
    if (series.empty() || !(series.back().key == key)) {
      series.push_back(analytics::Series{key, {}});
    }
    series.back().points[year] = value;
  }
  return series;
}

std::string render_ci_csv(const std::vector<analytics::CiRow>& rows) {
  std::string out = "scope,scope_id,subject,subject_id,year,value,lower,upper,n\n";
  for (const analytics::CiRow& row : rows) {
    csv::append_row(out, {analytics::scope_name(row.key.scope), row.key.scope_id,
                          analytics::subject_name(row.key.subject), row.key.subject_id,
                          std::to_string(row.year), format_value(row.ci.mean),
                          format_value(row.ci.lower), format_value(row.ci.upper),
                          std::to_string(row.ci.n)});
  }
  return out;
}

std::vector<analytics::CiRow> parse_ci_csv(std::string_view text) {
  std::vector<analytics::CiRow> rows;
  csv::Reader reader(text);
  csv::Row row;
  expect_exact_header(reader, row, "scope,scope_id,subject,subject_id,year,value,lower,upper,n");
  while (reader.next(row)) {
    if (is_blank(row)) continue;
    const std::size_t line = reader.line();
    if (row.size() != 9) {
      throw Error(ErrorCode::SchemaMismatch,
                  "line " + std::to_string(line) + ": expected 9 fields, got " +
                      std::to_string(row.size()));
    }
    analytics::CiRow ci_row;
    ci_row.key = parse_key(row, line);
    ci_row.year = parse_year_field(row[4], line);
    ci_row.ci.mean = parse_value(row[5], line);
    ci_row.ci.lower = parse_value(row[6], line);
    ci_row.ci.upper = parse_value(row[7], line);
    ci_row.ci.n = static_cast<std::size_t>(parse_year_field(row[8], line));
    rows.push_back(std::move(ci_row));
  }
  return rows;
}

std::string render_stats_csv(const std::vector<analytics::StatRow>& rows) {
  std::string out = "scope,scope_id,stat,subject_id,value\n";
  for (const analytics::StatRow& row : rows) {
    csv::append_row(out, {analytics::scope_name(row.scope), row.scope_id, row.stat,
                          row.subject_id, format_value(row.value)});
  }
  return out;
}

std::vector<analytics::StatRow> parse_stats_csv(std::string_view text) {
  std::vector<analytics::StatRow> rows;
  csv::Reader reader(text);
  csv::Row row;
  expect_exact_header(reader, row, "scope,scope_id,stat,subject_id,value");
  while (reader.next(row)) {
    if (is_blank(row)) continue;
    const std::size_t line = reader.line();
    if (row.size() != 5) {
      throw Error(ErrorCode::SchemaMismatch,
                  "line " + std::to_string(line) + ": expected 5 fields, got " +
                      std::to_string(row.size()));
    }
    analytics::StatRow stat;
    if (!analytics::scope_from_name(row[0], stat.scope)) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line) + ": unknown scope \"" + row[0] + "\"");
    }
    stat.scope_id = row[1];
    stat.stat = row[2];
    stat.subject_id = row[3];
    stat.value = parse_value(row[4], line);
    rows.push_back(std::move(stat));
  }
  return rows;
}

}  // namespace lexitrend::report
