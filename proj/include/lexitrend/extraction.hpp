#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lexitrend/model.hpp"

namespace lexitrend::extraction {

struct ArticleDoc {
  std::string outlet_id;
  std::string url;
  std::string date;      // ISO-8601 calendar date, YYYY-MM-DD
  std::string headline;  // plain text, whitespace collapsed
  std::string body;

  int year() const;

  bool operator==(const ArticleDoc&) const = default;
};

// Validates YYYY-MM-DD; throws ParseError.
int parse_year(std::string_view date);

// Named/numeric entities decoded, whitespace runs collapsed to single
// spaces, leading/trailing whitespace stripped. Unknown entities pass
// through verbatim.
std::string decode_entities_and_collapse(std::string_view text);

// headline = text of the first node matched by spec.headline_path; body =
// space-joined text of all nodes matched by spec.body_path, in document
// order. Throws HeadlineNotFound / BodyNotFound / MalformedDocument.
ArticleDoc extract_article(std::string_view html_text, const model::OutletSpec& spec,
                           std::string_view url, std::string_view date);

// JSON-lines stream: one object per line with keys
// outlet_id, url, date, headline, body.
std::string to_json_line(const ArticleDoc& doc);
std::string to_jsonl(const std::vector<ArticleDoc>& docs);
std::vector<ArticleDoc> from_jsonl(std::string_view text);

// Corpus manifest: CSV with header outlet_id,url,date,html_path; html_path
// is resolved relative to the manifest location by the caller.
struct ManifestEntry {
  std::string outlet_id;
  std::string url;
  std::string date;
  std::string html_path;
};

std::vector<ManifestEntry> parse_manifest(std::string_view text);

// Length-prefixed record stream for large corpora: each record is a CSV row
// `outlet_id,url,date,nbytes` followed by exactly nbytes of HTML and one
// newline.
struct CorpusRecord {
  std::string outlet_id;
  std::string url;
  std::string date;
  std::string html;

  bool operator==(const CorpusRecord&) const = default;
};

std::vector<CorpusRecord> read_record_stream(std::string_view data);
void append_record(std::string& out, const CorpusRecord& record);

}  // namespace lexitrend::extraction
