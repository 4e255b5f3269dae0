#include "lexitrend/csv.hpp"

namespace lexitrend::csv {

std::string escape_field(std::string_view field) {
  bool needs_quoting = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quoting) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void append_row(std::string& out, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out.push_back(',');
    out += escape_field(row[i]);
  }
  out.push_back('\n');
}

bool Reader::next(Row& row) {
  row.clear();
  if (pos_ == 0 && text_.size() >= 3 && text_.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    pos_ = 3;  // UTF-8 BOM
  }
  if (pos_ >= text_.size()) return false;
  row_line_ = line_;
  std::string field;
  bool in_quotes = false;
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (in_quotes) {
      if (c == '"') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
          field.push_back('"');
          pos_ += 2;
        } else {
          in_quotes = false;
          ++pos_;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(c);
        ++pos_;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        ++pos_;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        ++pos_;
        break;
      case '\r':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') ++pos_;
        [[fallthrough]];
      case '\n':
        ++pos_;
        ++line_;
        row.push_back(std::move(field));
        return true;
      default:
        field.push_back(c);
        ++pos_;
        break;
    }
  }
  // input ended without a trailing newline (or inside quotes; take as-is)
  row.push_back(std::move(field));
  return true;
}

std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  Reader reader(text);
  Row row;
  while (reader.next(row)) rows.push_back(row);
  return rows;
}

}  // namespace lexitrend::csv
