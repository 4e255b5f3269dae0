#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "lexitrend/counting.hpp"
#include "lexitrend/error.hpp"

using namespace lexitrend;
using counting::ArticleCounts;
using counting::PatternTable;
using counting::TokenPatternMatcher;

namespace {

// independent sliding-window oracle used to cross-check the automaton
std::uint64_t naive_count(const std::vector<std::string>& tokens,
                          const std::vector<std::string>& pattern) {
  if (pattern.empty() || pattern.size() > tokens.size()) return 0;
  std::uint64_t count = 0;
  for (std::size_t j = 0; j + pattern.size() <= tokens.size(); ++j) {
    bool match = true;
    for (std::size_t k = 0; k < pattern.size(); ++k) {
      if (tokens[j + k] != pattern[k]) {
        match = false;
        break;
      }
    }
    if (match) ++count;
  }
  return count;
}

std::vector<std::string_view> views_of(const std::vector<std::string>& tokens) {
  std::vector<std::string_view> views;
  views.reserve(tokens.size());
  for (const std::string& token : tokens) views.emplace_back(token);
  return views;
}

std::vector<model::Construct> simple_lexicon() {
  return model::load_lexicon(
      "construct_id,group_id,language,pattern\n"
      "prejudice,racism,en,racism\n"
      "prejudice,racism,en,racist\n"
      "prejudice,sexism,en,sexism\n"
      "prejudice,sexism,es,machismo\n"
      "sj,social-justice,en,social justice\n"
      "sj,social-justice,en,diversity\n");
}

extraction::ArticleDoc make_doc(const std::string& headline, const std::string& body,
                                const std::string& outlet = "outlet-a",
                                const std::string& date = "2020-01-15") {
  extraction::ArticleDoc doc;
  doc.outlet_id = outlet;
  doc.url = "https://example.org/x";
  doc.date = date;
  doc.headline = headline;
  doc.body = body;
  return doc;
}

}  // namespace

TEST_CASE("normalize: lowercase, hyphen splitting, diacritics preserved") {
  CHECK(counting::normalize("Anti-Semitism") == "anti semitism");
  CHECK(counting::normalize("RACISM") == "racism");
  CHECK(counting::normalize("machísta") == "machísta");
  CHECK(counting::normalize("ISLAMOPHOBIE—déjà") == "islamophobie déjà");
  CHECK(counting::normalize("Ärger ÜBER Straße") == "ärger über straße");
  // en dash U+2013, em dash U+2014, hyphen U+2010
  CHECK(counting::normalize("a–b—c‐d") == "a b c d");
  // decomposed e + combining acute composes, then lowercases
  CHECK(counting::normalize("Égalité") == "égalité");
}

TEST_CASE("tokenize: runs of letters and digits with interior apostrophes") {
  auto tokens = [](std::string_view text) {
    std::vector<std::string> out;
    for (std::string_view token : counting::tokenize(text)) out.emplace_back(token);
    return out;
  };
  CHECK(tokens("racism is bad") == std::vector<std::string>{"racism", "is", "bad"});
  CHECK(tokens("l'avenir 2021") == std::vector<std::string>{"l'avenir", "2021"});
  CHECK(tokens("a,b;c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(tokens("boys' night") == std::vector<std::string>{"boys", "night"});
  CHECK(tokens("'quoted'") == std::vector<std::string>{"quoted"});
  CHECK(tokens("don’t") == std::vector<std::string>{"don’t"});
  CHECK(tokens("").empty());
  CHECK(tokens("  .,;  ").empty());
}

TEST_CASE("count_patterns: spec examples") {
  auto constructs = simple_lexicon();
  std::vector<std::string> tokens1 = {"social", "justice", "warrior"};
  auto counts1 = counting::count_patterns(views_of(tokens1), constructs, "en");
  CHECK(counts1.at("sj:en:social_justice") == 1);

  std::vector<std::string> tokens2 = {"racism", "racism"};
  auto counts2 = counting::count_patterns(views_of(tokens2), constructs, "en");
  CHECK(counts2.at("prejudice:en:racism") == 2);

  // language filter: es patterns are inactive for en text
  CHECK(counts2.find("prejudice:es:machismo") == counts2.end());
  auto counts3 = counting::count_patterns(views_of(tokens2), constructs, "es");
  CHECK(counts3.at("prejudice:es:machismo") == 0);
}

TEST_CASE("count_patterns: overlapping and repeated matches count every start") {
  auto constructs = model::load_lexicon(
      "construct_id,group_id,language,pattern\n"
      "c,g,en,a a\n"
      "c,g,en,a\n");
  std::vector<std::string> tokens = {"a", "a", "a", "a"};
  auto counts = counting::count_patterns(views_of(tokens), constructs, "en");
  CHECK(counts.at("c:en:a") == 4);
  CHECK(counts.at("c:en:a_a") == 3);
}

TEST_CASE("count_patterns equals the naive sliding-window oracle on random cases") {
  std::mt19937 rng(123456);
  const std::vector<std::string> alphabet = {"alpha", "beta", "gamma", "delta", "epsilon"};
  for (int trial = 0; trial < 1000; ++trial) {
    int n_tokens = 1 + static_cast<int>(rng() % 200);
    std::vector<std::string> tokens;
    tokens.reserve(n_tokens);
    for (int i = 0; i < n_tokens; ++i) tokens.push_back(alphabet[rng() % alphabet.size()]);

    int n_patterns = 1 + static_cast<int>(rng() % 8);
    std::string lexicon = "construct_id,group_id,language,pattern\n";
    std::vector<std::vector<std::string>> patterns;
    std::set<std::string> seen;
    for (int p = 0; p < n_patterns; ++p) {
      int length = 1 + static_cast<int>(rng() % 3);
      std::vector<std::string> pattern;
      std::string joined;
      for (int k = 0; k < length; ++k) {
        pattern.push_back(alphabet[rng() % alphabet.size()]);
        joined += (k ? " " : "") + pattern.back();
      }
      if (!seen.insert(joined).second) continue;
      patterns.push_back(pattern);
      lexicon += "c,g,en," + joined + "\n";
    }
    auto constructs = model::load_lexicon(lexicon);
    auto counts = counting::count_patterns(views_of(tokens), constructs, "en");
    for (const auto& pattern : patterns) {
      std::vector<std::string> pattern_tokens = pattern;
      std::string id = model::make_pattern_id("c", "en", pattern_tokens);
      REQUIRE(counts.count(id) == 1);
      CHECK(counts.at(id) == naive_count(tokens, pattern));
    }
  }
}

TEST_CASE("count_article: headline participates, prefix is 8 tokens") {
  auto constructs = simple_lexicon();
  PatternTable table(constructs);
  TokenPatternMatcher matcher(table, "en");

  auto doc = make_doc("Racism row", "racism again");
  auto counts = counting::count_article(doc, table, matcher);
  CHECK(counts.total_unigrams == 4);
  CHECK(counts.term_counts[table.index_of("prejudice:en:racism")] == 2);
  CHECK(counts.headline_prefix == "racism row");
  CHECK(counts.year == 2020);

  auto long_head = make_doc("one two three four five six seven eight nine ten", "x");
  auto long_counts = counting::count_article(long_head, table, matcher);
  CHECK(long_counts.headline_prefix == "one two three four five six seven eight");
  CHECK(long_counts.total_unigrams == 11);

  auto headline_only = make_doc("diversity matters", "");
  auto ho = counting::count_article(headline_only, table, matcher);
  CHECK(ho.total_unigrams == 2);
  CHECK(ho.term_counts[table.index_of("sj:en:diversity")] == 1);
}

TEST_CASE("count_article: no n-gram spans the headline/body boundary") {
  auto constructs = simple_lexicon();
  PatternTable table(constructs);
  TokenPatternMatcher matcher(table, "en");
  auto doc = make_doc("we need social", "justice now");
  auto counts = counting::count_article(doc, table, matcher);
  CHECK(counts.term_counts[table.index_of("sj:en:social_justice")] == 0);

  auto within = make_doc("we need social justice", "now");
  auto counts2 = counting::count_article(within, table, matcher);
  CHECK(counts2.term_counts[table.index_of("sj:en:social_justice")] == 1);
}

TEST_CASE("count_article matches an independent recount on seeded random articles") {
  auto constructs = simple_lexicon();
  PatternTable table(constructs);
  TokenPatternMatcher matcher(table, "en");
  const std::vector<std::string> vocabulary = {
      "racism", "racist", "sexism", "social", "justice", "diversity",
      "the",    "of",     "and",    "report", "city",    "machismo",
  };
  std::mt19937 rng(2468);
  for (int trial = 0; trial < 50; ++trial) {
    int head_n = static_cast<int>(rng() % 12);
    int body_n = static_cast<int>(rng() % 120);
    std::string headline, body;
    std::vector<std::string> head_tokens, body_tokens;
    for (int i = 0; i < head_n; ++i) {
      head_tokens.push_back(vocabulary[rng() % vocabulary.size()]);
      headline += (i ? " " : "") + head_tokens.back();
    }
    for (int i = 0; i < body_n; ++i) {
      body_tokens.push_back(vocabulary[rng() % vocabulary.size()]);
      body += (i ? " " : "") + body_tokens.back();
    }
    auto counts = counting::count_article(make_doc(headline, body), table, matcher);
    CHECK(counts.total_unigrams == static_cast<std::uint64_t>(head_n + body_n));
    for (std::size_t p = 0; p < table.size(); ++p) {
      if (table.at(p).language != "en") {
        CHECK(counts.term_counts[p] == 0);
        continue;
      }
      std::uint64_t expected = naive_count(head_tokens, table.at(p).tokens) +
                               naive_count(body_tokens, table.at(p).tokens);
      CHECK(counts.term_counts[p] == expected);
    }
  }
}

TEST_CASE("aggregate_outlet_year: sums, threshold boundary, order independence") {
  model::AnalysisConfig config;  // threshold 250000
  std::vector<ArticleCounts> rows;
  rows.push_back(ArticleCounts{"a", 2020, "h1", 1000, {2, 0}});
  rows.push_back(ArticleCounts{"a", 2020, "h2", 500, {1, 0}});
  rows.push_back(ArticleCounts{"a", 2021, "h3", 249999, {0, 1}});
  rows.push_back(ArticleCounts{"b", 2020, "h4", 250000, {5, 5}});

  auto aggregates = counting::aggregate_outlet_year(rows, config, 2);
  REQUIRE(aggregates.size() == 3);
  CHECK(aggregates[0].outlet_id == "a");
  CHECK(aggregates[0].year == 2020);
  CHECK(aggregates[0].total_unigrams == 1500);
  CHECK(aggregates[0].term_counts == std::vector<std::uint64_t>{3, 0});
  CHECK(aggregates[0].article_count == 2);
  CHECK_FALSE(aggregates[0].eligible);
  CHECK_FALSE(aggregates[1].eligible);  // 249,999 is below the threshold
  CHECK(aggregates[1].year == 2021);
  CHECK(aggregates[2].eligible);  // 250,000 meets it
  CHECK(aggregates[2].outlet_id == "b");

  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(counting::aggregate_outlet_year(shuffled, config, 2) == aggregates);
  }
}

TEST_CASE("aggregation is a commutative monoid: partitions merge identically") {
  model::AnalysisConfig config;
  std::mt19937 rng(31337);
  std::vector<ArticleCounts> rows;
  for (int i = 0; i < 60; ++i) {
    rows.push_back(ArticleCounts{"outlet-" + std::to_string(rng() % 3),
                                 2018 + static_cast<int>(rng() % 3), "h",
                                 rng() % 200000,
                                 {rng() % 5, rng() % 5, rng() % 5}});
  }
  auto whole = counting::aggregate_outlet_year(rows, config, 3);
  for (int trial = 0; trial < 5; ++trial) {
    std::size_t cut1 = rng() % rows.size();
    std::size_t cut2 = cut1 + rng() % (rows.size() - cut1);
    std::vector<std::vector<counting::OutletYearAggregate>> parts;
    parts.push_back(counting::aggregate_outlet_year(
        std::span(rows).subspan(0, cut1), config, 3));
    parts.push_back(counting::aggregate_outlet_year(
        std::span(rows).subspan(cut1, cut2 - cut1), config, 3));
    parts.push_back(counting::aggregate_outlet_year(
        std::span(rows).subspan(cut2), config, 3));
    CHECK(counting::merge_aggregates(parts, config) == whole);
  }
}

TEST_CASE("aggregation monotonicity: adding an article never decreases totals") {
  model::AnalysisConfig config;
  std::vector<ArticleCounts> rows = {
      ArticleCounts{"a", 2020, "h", 100, {1, 2}},
      ArticleCounts{"a", 2020, "h", 50, {0, 1}},
  };
  auto before = counting::aggregate_outlet_year(rows, config, 2);
  rows.push_back(ArticleCounts{"a", 2020, "h", 10, {0, 3}});
  auto after = counting::aggregate_outlet_year(rows, config, 2);
  REQUIRE(before.size() == 1);
  REQUIRE(after.size() == 1);
  CHECK(after[0].total_unigrams >= before[0].total_unigrams);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(after[0].term_counts[i] >= before[0].term_counts[i]);
  }
}

TEST_CASE("counts CSV: round trip, violations, header-only") {
  auto constructs = simple_lexicon();
  PatternTable table(constructs);

  std::vector<ArticleCounts> rows = {
      ArticleCounts{"outlet-a", 2020, "racism row erupts", 25, {0, 2, 1, 0, 2, 1}},
      ArticleCounts{"outlet-a", 2021, "quiet day, nothing", 12, {0, 1, 0, 2, 0, 0}},
      ArticleCounts{"la-gaceta", 2021, "el machismo persiste", 16, {2, 0, 0, 0, 0, 1}},
  };
  std::string text = counting::write_counts_csv(rows, table);
  auto file = counting::read_counts_csv(text);
  CHECK(file.pattern_ids == table.pattern_ids());
  CHECK(file.rows == rows);
  // byte-stable output
  CHECK(counting::write_counts_csv(file.rows, table) == text);

  // header-only file -> empty rows
  auto empty = counting::read_counts_csv(text.substr(0, text.find('\n') + 1));
  CHECK(empty.rows.empty());
  CHECK(empty.pattern_ids == table.pattern_ids());

  // unigram pattern with count 5 against 3 total unigrams violates the bound
  std::string tampered =
      "outlet_id,year,headline_prefix,total_unigrams,c:en:term\n"
      "a,2020,h,3,5\n";
  try {
    counting::read_counts_csv(tampered);
    FAIL("expected InvariantViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvariantViolation);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::vector<std::string> violations;
  auto lenient = counting::read_counts_csv(tampered, violations);
  CHECK(lenient.rows.size() == 1);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("line 2") != std::string::npos);

  // bigram bound: count <= total - L + 1
  std::string bigram_ok =
      "outlet_id,year,headline_prefix,total_unigrams,c:en:a_b\n"
      "a,2020,h,3,2\n";
  CHECK_NOTHROW(counting::read_counts_csv(bigram_ok));
  std::string bigram_bad =
      "outlet_id,year,headline_prefix,total_unigrams,c:en:a_b\n"
      "a,2020,h,3,3\n";
  CHECK_THROWS_AS(counting::read_counts_csv(bigram_bad), Error);
}

TEST_CASE("counts CSV: negative counts raise NegativeCount") {
  std::string negative =
      "outlet_id,year,headline_prefix,total_unigrams,c:en:term\n"
      "a,2020,h,10,-1\n";
  try {
    counting::read_counts_csv(negative);
    FAIL("expected NegativeCount");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeCount);
    CHECK(e.exit_code() == kExitInvariant);
  }
}

TEST_CASE("aggregates CSV round trip") {
  model::AnalysisConfig config;
  config.eligibility_threshold = 100;
  std::vector<ArticleCounts> rows = {
      ArticleCounts{"a", 2020, "h", 150, {1, 2}},
      ArticleCounts{"b", 2020, "h", 50, {0, 1}},
  };
  auto aggregates = counting::aggregate_outlet_year(rows, config, 2);
  std::vector<std::string> ids = {"c:en:x", "c:en:y"};
  std::string text = counting::write_aggregates_csv(aggregates, ids);
  auto file = counting::read_aggregates_csv(text);
  CHECK(file.pattern_ids == ids);
  CHECK(file.rows == aggregates);
}

TEST_CASE("pattern table is ordered lexicographically by pattern id") {
  auto constructs = simple_lexicon();
  PatternTable table(constructs);
  auto ids = table.pattern_ids();
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  CHECK(table.index_of("no-such:en:pattern") == PatternTable::npos);
  for (const std::string& id : ids) {
    CHECK(table.at(table.index_of(id)).pattern_id == id);
  }
}
