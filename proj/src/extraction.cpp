#include "lexitrend/extraction.hpp"

#include <charconv>

#include <json.hpp>

#include "lexitrend/csv.hpp"
#include "lexitrend/entities.hpp"
#include "lexitrend/error.hpp"
#include "lexitrend/html.hpp"
#include "lexitrend/path_expr.hpp"
#include "lexitrend/utf8.hpp"

namespace lexitrend::extraction {

namespace {

using ordered_json = nlohmann::ordered_json;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

int parse_year(std::string_view date) {
  // YYYY-MM-DD
  if (date.size() != 10 || date[4] != '-' || date[7] != '-' ||
      !all_digits(date.substr(0, 4)) || !all_digits(date.substr(5, 2)) ||
      !all_digits(date.substr(8, 2))) {
    throw Error(ErrorCode::ParseError, "date \"" + std::string(date) + "\" is not YYYY-MM-DD");
  }
  int year = 0, month = 0, day = 0;
  std::from_chars(date.data(), date.data() + 4, year);
  std::from_chars(date.data() + 5, date.data() + 7, month);
  std::from_chars(date.data() + 8, date.data() + 10, day);
  if (year < 1 || month < 1 || month > 12 || day < 1 || day > 31) {
    throw Error(ErrorCode::ParseError, "date \"" + std::string(date) + "\" is out of range");
  }
  return year;
}

int ArticleDoc::year() const { return parse_year(date); }

std::string decode_entities_and_collapse(std::string_view text) {
  std::string decoded = html::decode_entities(text);
  std::string out;
  out.reserve(decoded.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < decoded.size()) {
    char32_t cp = utf8::decode(decoded, pos);
    if (utf8::is_whitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    utf8::append(out, cp);
  }
  return out;
}

ArticleDoc extract_article(std::string_view html_text, const model::OutletSpec& spec,
                           std::string_view url, std::string_view date) {
  parse_year(date);
  html::Document doc = html::parse(html_text);
  path_expr::PathExpr headline_path = path_expr::PathExpr::parse(spec.headline_path);
  path_expr::PathExpr body_path = path_expr::PathExpr::parse(spec.body_path);

  std::vector<const html::Node*> headline_nodes = headline_path.select(doc);
  if (headline_nodes.empty()) {
    throw Error(ErrorCode::HeadlineNotFound,
                "outlet " + spec.outlet_id + ": headline_path \"" + spec.headline_path +
                    "\" matched nothing (" + std::string(url) + ")");
  }
  std::vector<const html::Node*> body_nodes = body_path.select(doc);
  if (body_nodes.empty()) {
    throw Error(ErrorCode::BodyNotFound,
                "outlet " + spec.outlet_id + ": body_path \"" + spec.body_path +
                    "\" matched nothing (" + std::string(url) + ")");
  }

  ArticleDoc article;
  article.outlet_id = spec.outlet_id;
  article.url = std::string(url);
  article.date = std::string(date);
  article.headline = html::text_content(*headline_nodes.front());
  for (const html::Node* node : body_nodes) {
    std::string segment = html::text_content(*node);
    if (segment.empty()) continue;
    if (!article.body.empty()) article.body.push_back(' ');
    article.body += segment;
  }
  return article;
}

std::string to_json_line(const ArticleDoc& doc) {
  ordered_json j;
  j["outlet_id"] = doc.outlet_id;
  j["url"] = doc.url;
  j["date"] = doc.date;
  j["headline"] = doc.headline;
  j["body"] = doc.body;
  return j.dump();
}

std::string to_jsonl(const std::vector<ArticleDoc>& docs) {
  std::string out;
  for (const ArticleDoc& doc : docs) {
    out += to_json_line(doc);
    out.push_back('\n');
  }
  return out;
}

std::vector<ArticleDoc> from_jsonl(std::string_view text) {
  std::vector<ArticleDoc> docs;
  std::size_t pos = 0;
  std::size_t line_number = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_number;
    if (line.empty() || line == "\r") continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_number) + ": invalid JSON article record");
    }
    ArticleDoc doc;
    try {
      doc.outlet_id = j.at("outlet_id").get<std::string>();
      doc.url = j.at("url").get<std::string>();
      doc.date = j.at("date").get<std::string>();
      doc.headline = j.at("headline").get<std::string>();
      doc.body = j.at("body").get<std::string>();
    } catch (const ordered_json::exception&) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_number) + ": article record is missing fields");
    }
    try {
      parse_year(doc.date);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_number) + ": " + e.what());
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  std::vector<ManifestEntry> entries;
  csv::Reader reader(text);
  csv::Row row;
  bool header_seen = false;
  while (reader.next(row)) {
    if (!row.empty() && !row[0].empty() && row[0][0] == '#') continue;
    if (row.size() == 1 && row[0].empty()) continue;
    if (!header_seen) {
      std::string joined;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) joined.push_back(',');
        joined += row[i];
      }
      if (joined != "outlet_id,url,date,html_path") {
        throw Error(ErrorCode::SchemaMismatch,
                    "expected manifest header \"outlet_id,url,date,html_path\", got \"" +
                        joined + "\"");
      }
      header_seen = true;
      continue;
    }
    if (row.size() != 4) {
      throw Error(ErrorCode::SchemaMismatch, "line " + std::to_string(reader.line()) +
                                                 ": expected 4 fields, got " +
                                                 std::to_string(row.size()));
    }
    try {
      parse_year(row[2]);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(reader.line()) + ": " + e.what());
    }
    entries.push_back(ManifestEntry{row[0], row[1], row[2], row[3]});
  }
  return entries;
}

std::vector<CorpusRecord> read_record_stream(std::string_view data) {
  std::vector<CorpusRecord> records;
  std::size_t pos = 0;
  std::size_t record_number = 0;
  while (pos < data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) {
      throw Error(ErrorCode::SchemaMismatch, "record stream: unterminated record header");
    }
    ++record_number;
    std::string_view header = data.substr(pos, eol - pos);
    const std::string at = "record " + std::to_string(record_number) + ": ";
    std::vector<csv::Row> rows = csv::parse(header);
    if (rows.size() != 1 || rows[0].size() != 4) {
      throw Error(ErrorCode::SchemaMismatch, at + "expected header outlet_id,url,date,nbytes");
    }
    CorpusRecord record;
    record.outlet_id = rows[0][0];
    record.url = rows[0][1];
    record.date = rows[0][2];
    std::uint64_t nbytes = 0;
    const std::string& len = rows[0][3];
    auto [ptr, ec] = std::from_chars(len.data(), len.data() + len.size(), nbytes);
    if (ec != std::errc() || ptr != len.data() + len.size()) {
      throw Error(ErrorCode::SchemaMismatch, at + "invalid byte length \"" + len + "\"");
    }
    try {
      parse_year(record.date);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, at + e.what());
    }
    pos = eol + 1;
    if (pos + nbytes > data.size()) {
      throw Error(ErrorCode::SchemaMismatch, at + "truncated document body");
    }
    record.html = std::string(data.substr(pos, nbytes));
    pos += nbytes;
    if (pos < data.size() && data[pos] == '\n') ++pos;
    records.push_back(std::move(record));
  }
  return records;
}

void append_record(std::string& out, const CorpusRecord& record) {
  csv::append_row(out, {record.outlet_id, record.url, record.date,
                        std::to_string(record.html.size())});
  out += record.html;
  out.push_back('\n');
}

}  // namespace lexitrend::extraction
