#include "lexitrend/counting.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>

#include "lexitrend/csv.hpp"
#include "lexitrend/error.hpp"

namespace lexitrend::counting {

namespace {

const char* const kCountsHeadColumns = "outlet_id,year,headline_prefix,total_unigrams";
const char* const kAggregatesHeadColumns =
    "outlet_id,year,article_count,total_unigrams,eligible";

std::string row_prefix(std::size_t line) {
  return "line " + std::to_string(line) + ": ";
}

std::uint64_t parse_count(std::string_view field, std::size_t line, std::string_view column) {
  if (!field.empty() && field[0] == '-') {
    throw Error(ErrorCode::NegativeCount,
                row_prefix(line) + "negative value \"" + std::string(field) + "\" in column " +
                    std::string(column));
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::ParseError,
                row_prefix(line) + "invalid count \"" + std::string(field) + "\" in column " +
                    std::string(column));
  }
  return value;
}

int parse_row_year(std::string_view field, std::size_t line) {
  int year = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), year);
  if (ec != std::errc() || ptr != field.data() + field.size() || year < 1 || year > 9999) {
    throw Error(ErrorCode::ParseError,
                row_prefix(line) + "invalid year \"" + std::string(field) + "\"");
  }
  return year;
}

}  // namespace

PatternTable::PatternTable(const std::vector<model::Construct>& constructs) {
  for (const model::Construct& construct : constructs) {
    for (const model::LexiconEntry& entry : construct.entries) {
      PatternInfo info;
      info.pattern_id = model::make_pattern_id(construct.construct_id, entry.language,
                                               entry.tokens);
      info.construct_id = construct.construct_id;
      info.group_id = entry.group_id;
      info.language = entry.language;
      info.tokens = entry.tokens;
      patterns_.push_back(std::move(info));
    }
  }
  std::sort(patterns_.begin(), patterns_.end(),
            [](const PatternInfo& a, const PatternInfo& b) {
              return a.pattern_id < b.pattern_id;
            });
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    index_.emplace(patterns_[i].pattern_id, i);
  }
}

std::vector<std::string> PatternTable::pattern_ids() const {
  std::vector<std::string> ids;
  ids.reserve(patterns_.size());
  for (const PatternInfo& info : patterns_) ids.push_back(info.pattern_id);
  return ids;
}

std::size_t PatternTable::index_of(std::string_view pattern_id) const {
  auto it = index_.find(std::string(pattern_id));
  return it == index_.end() ? npos : it->second;
}

TokenPatternMatcher::TokenPatternMatcher(const PatternTable& table, std::string_view language)
    : language_(language) {
  states_.emplace_back();  // root
  for (std::size_t i = 0; i < table.size(); ++i) {
    const PatternInfo& info = table.at(i);
    if (info.language != language_) continue;
    pattern_indices_.push_back(i);
    int state = 0;
    for (const std::string& token : info.tokens) {
      auto [it, inserted] = vocab_.try_emplace(token, static_cast<int>(vocab_.size()));
      int symbol = it->second;
      auto edge = states_[state].next.find(symbol);
      if (edge == states_[state].next.end()) {
        states_[state].next.emplace(symbol, static_cast<int>(states_.size()));
        state = static_cast<int>(states_.size());
        states_.emplace_back();
      } else {
        state = edge->second;
      }
    }
    states_[state].emits.push_back(static_cast<std::uint32_t>(i));
  }

  // breadth-first failure links; emits inherit the fail state's emits so a
  // single lookup per position yields every match ending there
  std::deque<int> queue;
  for (const auto& [symbol, child] : states_[0].next) {
    states_[child].fail = 0;
    queue.push_back(child);
  }
  while (!queue.empty()) {
    int state = queue.front();
    queue.pop_front();
    for (const auto& [symbol, child] : states_[state].next) {
      int fallback = states_[state].fail;
      while (fallback != 0 && !states_[fallback].next.count(symbol)) {
        fallback = states_[fallback].fail;
      }
      auto hit = states_[fallback].next.find(symbol);
      int fail_to = (hit != states_[fallback].next.end() && hit->second != child)
                        ? hit->second
                        : 0;
      states_[child].fail = fail_to;
      const auto& inherited = states_[fail_to].emits;
      states_[child].emits.insert(states_[child].emits.end(), inherited.begin(),
                                  inherited.end());
      queue.push_back(child);
    }
  }
}

void TokenPatternMatcher::count(std::span<const std::string_view> tokens,
                                std::vector<std::uint64_t>& counts) const {
  if (pattern_indices_.empty()) return;
  int state = 0;
  for (std::string_view token : tokens) {
    auto symbol_it = vocab_.find(token);
    if (symbol_it == vocab_.end()) {
      state = 0;
      continue;
    }
    int symbol = symbol_it->second;
    while (true) {
      auto edge = states_[state].next.find(symbol);
      if (edge != states_[state].next.end()) {
        state = edge->second;
        break;
      }
      if (state == 0) break;
      state = states_[state].fail;
    }
    for (std::uint32_t pattern : states_[state].emits) ++counts[pattern];
  }
}

std::map<std::string, std::uint64_t> count_patterns(
    std::span<const std::string_view> tokens,
    const std::vector<model::Construct>& constructs, std::string_view language) {
  PatternTable table(constructs);
  TokenPatternMatcher matcher(table, language);
  std::vector<std::uint64_t> counts(table.size(), 0);
  matcher.count(tokens, counts);
  std::map<std::string, std::uint64_t> result;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.at(i).language == language) result[table.at(i).pattern_id] = counts[i];
  }
  return result;
}

ArticleCounts count_article(const extraction::ArticleDoc& doc, const PatternTable& table,
                            const TokenPatternMatcher& matcher) {
  ArticleCounts counts;
  counts.outlet_id = doc.outlet_id;
  counts.year = doc.year();
  counts.term_counts.assign(table.size(), 0);

  std::string headline = normalize(doc.headline);
  std::string body = normalize(doc.body);
  std::vector<std::string_view> headline_tokens = tokenize(headline);
  std::vector<std::string_view> body_tokens = tokenize(body);

  std::size_t prefix_len = std::min<std::size_t>(headline_tokens.size(), kHeadlinePrefixTokens);
  for (std::size_t i = 0; i < prefix_len; ++i) {
    if (i) counts.headline_prefix.push_back(' ');
    counts.headline_prefix += headline_tokens[i];
  }
  counts.total_unigrams = headline_tokens.size() + body_tokens.size();
  // separate passes: the headline/body boundary never hosts an n-gram match
  matcher.count(headline_tokens, counts.term_counts);
  matcher.count(body_tokens, counts.term_counts);
  return counts;
}

std::vector<OutletYearAggregate> aggregate_outlet_year(
    std::span<const ArticleCounts> rows, const model::AnalysisConfig& config,
    std::size_t pattern_count) {
  std::map<std::pair<std::string, int>, OutletYearAggregate> grouped;
  for (const ArticleCounts& row : rows) {
    if (row.term_counts.size() != pattern_count) {
      throw Error(ErrorCode::SchemaMismatch,
                  "article row for " + row.outlet_id + " has " +
                      std::to_string(row.term_counts.size()) + " pattern counts, expected " +
                      std::to_string(pattern_count));
    }
    auto [it, inserted] =
        grouped.try_emplace({row.outlet_id, row.year}, OutletYearAggregate{});
    OutletYearAggregate& agg = it->second;
    if (inserted) {
      agg.outlet_id = row.outlet_id;
      agg.year = row.year;
      agg.term_counts.assign(pattern_count, 0);
    }
    agg.article_count += 1;
    agg.total_unigrams += row.total_unigrams;
    for (std::size_t i = 0; i < pattern_count; ++i) {
      agg.term_counts[i] += row.term_counts[i];
    }
  }
  std::vector<OutletYearAggregate> aggregates;
  aggregates.reserve(grouped.size());
  for (auto& [key, agg] : grouped) {
    agg.eligible = agg.total_unigrams >= config.eligibility_threshold;
    aggregates.push_back(std::move(agg));
  }
  return aggregates;
}

std::vector<OutletYearAggregate> merge_aggregates(
    std::span<const std::vector<OutletYearAggregate>> parts,
    const model::AnalysisConfig& config) {
  std::map<std::pair<std::string, int>, OutletYearAggregate> grouped;
  for (const auto& part : parts) {
    for (const OutletYearAggregate& agg : part) {
      auto [it, inserted] = grouped.try_emplace({agg.outlet_id, agg.year}, agg);
      if (inserted) continue;
      OutletYearAggregate& merged = it->second;
      if (merged.term_counts.size() != agg.term_counts.size()) {
        throw Error(ErrorCode::SchemaMismatch, "partial aggregates disagree on pattern count");
      }
      merged.article_count += agg.article_count;
      merged.total_unigrams += agg.total_unigrams;
      for (std::size_t i = 0; i < agg.term_counts.size(); ++i) {
        merged.term_counts[i] += agg.term_counts[i];
      }
    }
  }
  std::vector<OutletYearAggregate> aggregates;
  aggregates.reserve(grouped.size());
  for (auto& [key, agg] : grouped) {
    agg.eligible = agg.total_unigrams >= config.eligibility_threshold;
    aggregates.push_back(std::move(agg));
  }
  return aggregates;
}

std::string write_counts_csv(std::span<const ArticleCounts> rows, const PatternTable& table) {
  std::string out(kCountsHeadColumns);
  for (const PatternInfo& info : table.patterns()) {
    out.push_back(',');
    out += csv::escape_field(info.pattern_id);
  }
  out.push_back('\n');
  for (const ArticleCounts& row : rows) {
    if (row.term_counts.size() != table.size()) {
      throw Error(ErrorCode::SchemaMismatch, "article row does not match the pattern table");
    }
    out += csv::escape_field(row.outlet_id);
    out.push_back(',');
    out += std::to_string(row.year);
    out.push_back(',');
    out += csv::escape_field(row.headline_prefix);
    out.push_back(',');
    out += std::to_string(row.total_unigrams);
    for (std::uint64_t count : row.term_counts) {
      out.push_back(',');
      out += std::to_string(count);
    }
    out.push_back('\n');
  }
  return out;
}

namespace {

CountsFile read_counts_csv_impl(std::string_view text, std::vector<std::string>* violations) {
  CountsFile file;
  csv::Reader reader(text);
  csv::Row row;
  if (!reader.next(row)) {
    throw Error(ErrorCode::SchemaMismatch, "counts file is empty");
  }
  if (row.size() < 4 || row[0] != "outlet_id" || row[1] != "year" ||
      row[2] != "headline_prefix" || row[3] != "total_unigrams") {
    throw Error(ErrorCode::SchemaMismatch,
                std::string("counts header must start with ") + kCountsHeadColumns);
  }
  file.pattern_ids.assign(row.begin() + 4, row.end());
  std::vector<int> pattern_lengths;
  pattern_lengths.reserve(file.pattern_ids.size());
  for (const std::string& id : file.pattern_ids) {
    pattern_lengths.push_back(model::pattern_token_count(id));
  }
  if (!std::is_sorted(file.pattern_ids.begin(), file.pattern_ids.end())) {
    throw Error(ErrorCode::SchemaMismatch, "pattern columns are not in lexicographic order");
  }

  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    const std::size_t line = reader.line();
    if (row.size() != 4 + file.pattern_ids.size()) {
      throw Error(ErrorCode::SchemaMismatch,
                  row_prefix(line) + "expected " + std::to_string(4 + file.pattern_ids.size()) +
                      " fields, got " + std::to_string(row.size()));
    }
    ArticleCounts counts;
    counts.outlet_id = row[0];
    counts.year = parse_row_year(row[1], line);
    counts.headline_prefix = row[2];
    counts.total_unigrams = parse_count(row[3], line, "total_unigrams");
    counts.term_counts.reserve(file.pattern_ids.size());
    for (std::size_t i = 0; i < file.pattern_ids.size(); ++i) {
      std::uint64_t value;
      try {
        value = parse_count(row[4 + i], line, file.pattern_ids[i]);
      } catch (const Error& e) {
        if (violations != nullptr && e.code() == ErrorCode::NegativeCount) {
          violations->push_back(e.what());
          value = 0;
        } else {
          throw;
        }
      }
      std::uint64_t length = static_cast<std::uint64_t>(pattern_lengths[i]);
      std::uint64_t bound =
          counts.total_unigrams + 1 > length ? counts.total_unigrams - length + 1 : 0;
      if (value > bound) {
        std::string message = row_prefix(line) + "count " + std::to_string(value) +
                              " for pattern \"" + file.pattern_ids[i] + "\" exceeds bound " +
                              std::to_string(bound) + " (total_unigrams " +
                              std::to_string(counts.total_unigrams) + ")";
        if (violations != nullptr) {
          violations->push_back("InvariantViolation: " + message);
        } else {
          throw Error(ErrorCode::InvariantViolation, message);
        }
      }
      counts.term_counts.push_back(value);
    }
    file.rows.push_back(std::move(counts));
  }
  return file;
}

}  // namespace

CountsFile read_counts_csv(std::string_view text) {
  return read_counts_csv_impl(text, nullptr);
}

CountsFile read_counts_csv(std::string_view text, std::vector<std::string>& violations) {
  return read_counts_csv_impl(text, &violations);
}

std::string write_aggregates_csv(std::span<const OutletYearAggregate> aggregates,
                                 std::span<const std::string> pattern_ids) {
  std::string out(kAggregatesHeadColumns);
  for (const std::string& id : pattern_ids) {
    out.push_back(',');
    out += csv::escape_field(id);
  }
  out.push_back('\n');
  for (const OutletYearAggregate& agg : aggregates) {
    out += csv::escape_field(agg.outlet_id);
    out.push_back(',');
    out += std::to_string(agg.year);
    out.push_back(',');
    out += std::to_string(agg.article_count);
    out.push_back(',');
    out += std::to_string(agg.total_unigrams);
    out.push_back(',');
    out += agg.eligible ? "1" : "0";
    for (std::uint64_t count : agg.term_counts) {
      out.push_back(',');
      out += std::to_string(count);
    }
    out.push_back('\n');
  }
  return out;
}

AggregatesFile read_aggregates_csv(std::string_view text) {
  AggregatesFile file;
  csv::Reader reader(text);
  csv::Row row;
  if (!reader.next(row)) {
    throw Error(ErrorCode::SchemaMismatch, "aggregates file is empty");
  }
  if (row.size() < 5 || row[0] != "outlet_id" || row[1] != "year" ||
      row[2] != "article_count" || row[3] != "total_unigrams" || row[4] != "eligible") {
    throw Error(ErrorCode::SchemaMismatch,
                std::string("aggregates header must start with ") + kAggregatesHeadColumns);
  }
  file.pattern_ids.assign(row.begin() + 5, row.end());
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    const std::size_t line = reader.line();
    if (row.size() != 5 + file.pattern_ids.size()) {
      throw Error(ErrorCode::SchemaMismatch,
                  row_prefix(line) + "expected " + std::to_string(5 + file.pattern_ids.size()) +
                      " fields, got " + std::to_string(row.size()));
    }
    OutletYearAggregate agg;
    agg.outlet_id = row[0];
    agg.year = parse_row_year(row[1], line);
    agg.article_count = parse_count(row[2], line, "article_count");
    agg.total_unigrams = parse_count(row[3], line, "total_unigrams");
    if (row[4] != "0" && row[4] != "1") {
      throw Error(ErrorCode::ParseError,
                  row_prefix(line) + "eligible must be 0 or 1, got \"" + row[4] + "\"");
    }
    agg.eligible = row[4] == "1";
    agg.term_counts.reserve(file.pattern_ids.size());
    for (std::size_t i = 0; i < file.pattern_ids.size(); ++i) {
      agg.term_counts.push_back(parse_count(row[5 + i], line, file.pattern_ids[i]));
    }
    file.rows.push_back(std::move(agg));
  }
  return file;
}

}  // namespace lexitrend::counting
