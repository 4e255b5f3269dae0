#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexitrend::csv {

// RFC-4180: fields containing commas, quotes or newlines are quoted, quotes
// doubled. Rows end with "\n"; "\r\n" is accepted on input.
using Row = std::vector<std::string>;

std::string escape_field(std::string_view field);
void append_row(std::string& out, const Row& row);

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  // Reads the next row into `row`; returns false at end of input.
  bool next(Row& row);

  // Physical line number (1-based) where the last returned row started.
  std::size_t line() const { return row_line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t row_line_ = 0;
};

std::vector<Row> parse(std::string_view text);

}  // namespace lexitrend::csv
