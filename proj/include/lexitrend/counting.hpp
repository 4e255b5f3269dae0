#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexitrend/extraction.hpp"
#include "lexitrend/model.hpp"
#include "lexitrend/text_norm.hpp"

namespace lexitrend::counting {

// Flattened view of every lexicon pattern, ordered by pattern_id so that
// counts-CSV columns are byte-stable.
struct PatternInfo {
  std::string pattern_id;
  std::string construct_id;
  std::string group_id;
  std::string language;
  std::vector<std::string> tokens;
};

class PatternTable {
 public:
  PatternTable() = default;
  explicit PatternTable(const std::vector<model::Construct>& constructs);

  std::size_t size() const { return patterns_.size(); }
  const PatternInfo& at(std::size_t i) const { return patterns_[i]; }
  const std::vector<PatternInfo>& patterns() const { return patterns_; }
  std::vector<std::string> pattern_ids() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t index_of(std::string_view pattern_id) const;

 private:
  std::vector<PatternInfo> patterns_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Token-level Aho-Corasick automaton over the patterns of one language,
// compiled once and shared across articles.
class TokenPatternMatcher {
 public:
  TokenPatternMatcher(const PatternTable& table, std::string_view language);

  const std::string& language() const { return language_; }
  std::size_t active_patterns() const { return pattern_indices_.size(); }

  // Adds one count per matching start position to counts (table-aligned,
  // size = table.size()). Matching never spans separate calls.
  void count(std::span<const std::string_view> tokens,
             std::vector<std::uint64_t>& counts) const;

 private:
  struct TransparentHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  struct TransparentEq {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const { return a == b; }
  };

  struct State {
    std::unordered_map<int, int> next;
    int fail = 0;
    std::vector<std::uint32_t> emits;  // table indices, incl. suffix outputs
  };

  std::string language_;
  std::unordered_map<std::string, int, TransparentHash, TransparentEq> vocab_;
  std::vector<State> states_;
  std::vector<std::size_t> pattern_indices_;
};

// One-shot counting over a token sequence; active patterns are those whose
// language matches. Returns pattern_id -> count for the active patterns.
std::map<std::string, std::uint64_t> count_patterns(
    std::span<const std::string_view> tokens,
    const std::vector<model::Construct>& constructs, std::string_view language);

struct ArticleCounts {
  std::string outlet_id;
  int year = 0;
  std::string headline_prefix;  // first 8 headline tokens, space-joined
  std::uint64_t total_unigrams = 0;
  std::vector<std::uint64_t> term_counts;  // table-aligned

  bool operator==(const ArticleCounts&) const = default;
};

inline constexpr int kHeadlinePrefixTokens = 8;

// normalize -> tokenize on headline and body separately; n-grams never span
// the headline/body boundary; the headline participates in all counts.
ArticleCounts count_article(const extraction::ArticleDoc& doc, const PatternTable& table,
                            const TokenPatternMatcher& matcher);

struct OutletYearAggregate {
  std::string outlet_id;
  int year = 0;
  std::uint64_t article_count = 0;
  std::uint64_t total_unigrams = 0;
  std::vector<std::uint64_t> term_counts;
  bool eligible = false;

  bool operator==(const OutletYearAggregate&) const = default;
};

// Exact sums per (outlet_id, year), sorted by (outlet_id, year); the result
// is independent of input order. eligible <=> total_unigrams >=
// config.eligibility_threshold.
std::vector<OutletYearAggregate> aggregate_outlet_year(
    std::span<const ArticleCounts> rows, const model::AnalysisConfig& config,
    std::size_t pattern_count);

// Associative merge of partial aggregates (parallel partitions).
std::vector<OutletYearAggregate> merge_aggregates(
    std::span<const std::vector<OutletYearAggregate>> parts,
    const model::AnalysisConfig& config);

// Counts CSV: header outlet_id,year,headline_prefix,total_unigrams followed
// by one column per pattern_id in lexicographic order; RFC-4180 quoting.
std::string write_counts_csv(std::span<const ArticleCounts> rows, const PatternTable& table);

struct CountsFile {
  std::vector<std::string> pattern_ids;
  std::vector<ArticleCounts> rows;
};

// Validates per-row invariant count <= max(0, total_unigrams - L + 1).
// The strict overload throws on the first violation; the collecting
// overload records one message per violating row instead.
CountsFile read_counts_csv(std::string_view text);
CountsFile read_counts_csv(std::string_view text, std::vector<std::string>& violations);

// Aggregates CSV: header outlet_id,year,article_count,total_unigrams,eligible
// followed by the pattern columns.
std::string write_aggregates_csv(std::span<const OutletYearAggregate> aggregates,
                                 std::span<const std::string> pattern_ids);

struct AggregatesFile {
  std::vector<std::string> pattern_ids;
  std::vector<OutletYearAggregate> rows;
};

AggregatesFile read_aggregates_csv(std::string_view text);

}  // namespace lexitrend::counting
