#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lexitrend/counting.hpp"
#include "lexitrend/error.hpp"
#include "lexitrend/extraction.hpp"
#include "lexitrend/report.hpp"

namespace lexitrend::report {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::IoError, "cannot read " + path.string());
  }
  return std::move(buffer).str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
}

// Applies fn(i) for i in [0, n) across `threads` workers; any exception is
// rethrown on the caller thread after all workers join.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> workers;
  const std::size_t worker_count = std::min<std::size_t>(threads, n);
  workers.reserve(worker_count);
  for (std::size_t w = 0; w < worker_count; ++w) {
    workers.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct CommonOptions {
  std::string registry_path;
  std::string lexicon_path;
  std::string config_path;
  std::string input_path;
  std::string output_path;
  int threads = 1;
};

std::vector<model::OutletSpec> load_registry(const std::string& path, std::ostream& err) {
  std::vector<model::OutletSpec> registry = model::parse_outlet_registry(read_file(path));
  for (const std::string& warning : model::registry_warnings(registry)) {
    err << "warning: " << warning << "\n";
  }
  return registry;
}

model::AnalysisConfig load_config(const std::string& path) {
  if (path.empty()) return model::AnalysisConfig{};
  return model::parse_analysis_config(read_file(path));
}

int run_extract(const CommonOptions& opt, const std::string& format, std::ostream& err) {
  std::vector<model::OutletSpec> registry = load_registry(opt.registry_path, err);

  struct PendingArticle {
    const model::OutletSpec* spec;
    std::string url;
    std::string date;
    std::string html;
  };
  std::vector<PendingArticle> pending;

  const auto resolve = [&](const std::string& outlet_id) -> const model::OutletSpec* {
    const model::OutletSpec* spec = model::find_outlet(registry, outlet_id);
    if (spec == nullptr) {
      throw Error(ErrorCode::ParseError,
                  "corpus references outlet_id \"" + outlet_id + "\" not in the registry");
    }
    return spec;
  };

  std::string input = read_file(opt.input_path);
  if (format == "stream") {
    for (extraction::CorpusRecord& record : extraction::read_record_stream(input)) {
      pending.push_back(PendingArticle{resolve(record.outlet_id), std::move(record.url),
                                       std::move(record.date), std::move(record.html)});
    }
  } else {
    fs::path base = fs::path(opt.input_path).parent_path();
    for (const extraction::ManifestEntry& entry : extraction::parse_manifest(input)) {
      fs::path html_path = fs::path(entry.html_path);
      if (html_path.is_relative()) html_path = base / html_path;
      pending.push_back(PendingArticle{resolve(entry.outlet_id), entry.url, entry.date,
                                       read_file(html_path)});
    }
  }

  std::vector<extraction::ArticleDoc> docs(pending.size());
  parallel_for(pending.size(), opt.threads, [&](std::size_t i) {
    docs[i] = extraction::extract_article(pending[i].html, *pending[i].spec, pending[i].url,
                                          pending[i].date);
  });
  write_file(opt.output_path, extraction::to_jsonl(docs));
  return kExitOk;
}

int run_count(const CommonOptions& opt, std::ostream& err) {
  std::vector<model::OutletSpec> registry = load_registry(opt.registry_path, err);
  std::vector<model::Construct> constructs = model::load_lexicon(read_file(opt.lexicon_path));
  counting::PatternTable table(constructs);

  std::map<std::string, counting::TokenPatternMatcher> matchers;
  for (const model::OutletSpec& spec : registry) {
    if (matchers.find(spec.language) == matchers.end()) {
      matchers.emplace(spec.language, counting::TokenPatternMatcher(table, spec.language));
    }
  }

  std::vector<extraction::ArticleDoc> docs = extraction::from_jsonl(read_file(opt.input_path));
  std::vector<counting::ArticleCounts> rows(docs.size());
  parallel_for(docs.size(), opt.threads, [&](std::size_t i) {
    const model::OutletSpec* spec = model::find_outlet(registry, docs[i].outlet_id);
    if (spec == nullptr) {
      throw Error(ErrorCode::ParseError, "article " + std::to_string(i + 1) +
                                             " references outlet_id \"" + docs[i].outlet_id +
                                             "\" not in the registry");
    }
    rows[i] = counting::count_article(docs[i], table, matchers.at(spec->language));
  });
  write_file(opt.output_path, counting::write_counts_csv(rows, table));
  return kExitOk;
}

int run_aggregate(const CommonOptions& opt) {
  model::AnalysisConfig config = load_config(opt.config_path);
  counting::CountsFile counts = counting::read_counts_csv(read_file(opt.input_path));
  std::vector<counting::OutletYearAggregate> aggregates =
      counting::aggregate_outlet_year(counts.rows, config, counts.pattern_ids.size());
  write_file(opt.output_path, counting::write_aggregates_csv(aggregates, counts.pattern_ids));
  return kExitOk;
}

int run_analyze(const CommonOptions& opt, const std::string& mode_name, int smooth_override,
                std::ostream& err) {
  std::vector<model::OutletSpec> registry = load_registry(opt.registry_path, err);
  std::vector<model::Construct> constructs = model::load_lexicon(read_file(opt.lexicon_path));
  model::AnalysisConfig config = load_config(opt.config_path);
  if (smooth_override > 0) {
    config.smoothing_window = smooth_override;
    model::validate(config);
  }
  analytics::PoolingMode mode = analytics::PoolingMode::Pooled;
  if (mode_name == "unweighted") {
    mode = analytics::PoolingMode::Unweighted;
  } else if (mode_name != "pooled") {
    throw Error(ErrorCode::ConfigError, "--mode must be pooled or unweighted");
  }

  std::string input = read_file(opt.input_path);
  std::vector<counting::OutletYearAggregate> aggregates;
  std::vector<std::string> pattern_ids;
  if (input.rfind("outlet_id,year,headline_prefix,", 0) == 0) {
    counting::CountsFile counts = counting::read_counts_csv(input);
    pattern_ids = counts.pattern_ids;
    aggregates = counting::aggregate_outlet_year(counts.rows, config, pattern_ids.size());
  } else {
    counting::AggregatesFile file = counting::read_aggregates_csv(input);
    pattern_ids = file.pattern_ids;
    aggregates = std::move(file.rows);
    // eligibility always reflects the active config
    for (counting::OutletYearAggregate& agg : aggregates) {
      agg.eligible = agg.total_unigrams >= config.eligibility_threshold;
    }
  }

  counting::PatternTable table(constructs);
  if (pattern_ids != table.pattern_ids()) {
    throw Error(ErrorCode::SchemaMismatch,
                "input pattern columns do not match the lexicon; re-run `count` with this lexicon");
  }

  analytics::AnalysisResult result =
      analytics::analyze(aggregates, registry, constructs, config, mode);

  fs::path out_dir(opt.output_path);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
  }
  write_file(out_dir / "series.csv", render_series_csv(result.series));
  write_file(out_dir / "ci.csv", render_ci_csv(result.ci));
  write_file(out_dir / "stats.csv", render_stats_csv(result.stats));
  return kExitOk;
}

std::string format_annotation(const std::string& stat, double value) {
  char buffer[64];
  if (stat == "pearson") {
    std::snprintf(buffer, sizeof(buffer), "r = %.2f", value);
  } else if (stat == "percent-change") {
    std::snprintf(buffer, sizeof(buffer), "%+.0f%%", value);
  } else {
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  }
  return buffer;
}

int run_chart(const CommonOptions& opt, const std::string& scope_name_arg,
              std::vector<std::string> construct_ids, const std::string& group_id,
              const std::string& title_arg) {
  analytics::Scope scope;
  if (!analytics::scope_from_name(scope_name_arg, scope)) {
    throw Error(ErrorCode::ConfigError, "--scope must be outlet, country, region or world");
  }
  fs::path in_dir(opt.input_path);
  std::vector<analytics::Series> series = parse_series_csv(read_file(in_dir / "series.csv"));
  std::vector<analytics::CiRow> ci = parse_ci_csv(read_file(in_dir / "ci.csv"));
  std::vector<analytics::StatRow> stats = parse_stats_csv(read_file(in_dir / "stats.csv"));

  const auto stat_value = [&](const std::string& scope_id, const std::string& stat,
                              const std::string& subject_id) -> std::optional<double> {
    for (const analytics::StatRow& row : stats) {
      if (row.scope == scope && row.scope_id == scope_id && row.stat == stat &&
          row.subject_id == subject_id) {
        return row.value;
      }
    }
    return std::nullopt;
  };

  ChartSpec spec;
  if (!group_id.empty()) {
    // group prevalence panels with CI bands and percent-change annotations
    spec.title = title_arg.empty()
                     ? "Yearly prevalence of group \"" + group_id + "\" by " + scope_name_arg
                     : title_arg;
    spec.y_label = "relative frequency";
    std::set<std::string> scope_ids;
    for (const analytics::Series& s : series) {
      if (s.key.scope == scope && s.key.subject == analytics::Subject::Group &&
          s.key.subject_id == group_id) {
        scope_ids.insert(s.key.scope_id);
      }
    }
    for (const std::string& scope_id : scope_ids) {
      ChartSpec::Panel panel;
      panel.scope_id = scope_id;
      analytics::SeriesKey key{scope, scope_id, analytics::Subject::Group, group_id};
      panel.series.push_back(key);
      panel.band = key;
      if (auto value = stat_value(scope_id, "percent-change", group_id)) {
        panel.annotation = format_annotation("percent-change", *value);
      }
      spec.panels.push_back(std::move(panel));
    }
  } else {
    // construct-average panels; annotate r when exactly two constructs
    if (construct_ids.empty()) {
      std::set<std::string> ids;
      for (const analytics::Series& s : series) {
        if (s.key.scope == scope && s.key.subject == analytics::Subject::ConstructAverage) {
          ids.insert(s.key.subject_id);
        }
      }
      construct_ids.assign(ids.begin(), ids.end());
    }
    if (construct_ids.empty()) {
      throw Error(ErrorCode::UnknownSeries, "no construct-average series in the analysis output");
    }
    spec.title = title_arg;
    if (spec.title.empty()) {
      spec.title = "Average min-max scaled yearly frequencies by " + scope_name_arg;
    }
    spec.y_label = "min-max scaled frequency";
    std::set<std::string> scope_ids;
    for (const analytics::Series& s : series) {
      if (s.key.scope == scope && s.key.subject == analytics::Subject::ConstructAverage &&
          std::find(construct_ids.begin(), construct_ids.end(), s.key.subject_id) !=
              construct_ids.end()) {
        scope_ids.insert(s.key.scope_id);
      }
    }
    for (const std::string& scope_id : scope_ids) {
      ChartSpec::Panel panel;
      panel.scope_id = scope_id;
      for (const std::string& construct_id : construct_ids) {
        analytics::SeriesKey key{scope, scope_id, analytics::Subject::ConstructAverage,
                                 construct_id};
        bool present = false;
        for (const analytics::Series& s : series) {
          if (s.key == key) present = true;
        }
        if (present) panel.series.push_back(key);
      }
      if (panel.series.empty()) continue;
      if (construct_ids.size() == 2) {
        std::string pair = construct_ids[0] < construct_ids[1]
                               ? construct_ids[0] + "~" + construct_ids[1]
                               : construct_ids[1] + "~" + construct_ids[0];
        if (auto value = stat_value(scope_id, "pearson", pair)) {
          panel.annotation = format_annotation("pearson", *value);
        }
      }
      spec.panels.push_back(std::move(panel));
    }
  }
  if (spec.panels.empty()) {
    throw Error(ErrorCode::UnknownSeries, "no series match the chart selection");
  }
  write_file(opt.output_path, render_chart_svg(spec, series, ci));
  return kExitOk;
}

int run_verify(const CommonOptions& opt, std::ostream& out) {
  std::vector<std::string> violations;
  counting::CountsFile counts = counting::read_counts_csv(read_file(opt.input_path), violations);
  for (const std::string& violation : violations) {
    out << violation << "\n";
  }
  if (!violations.empty()) {
    out << violations.size() << " invariant violation(s) in " << opt.input_path << "\n";
    return kExitInvariant;
  }
  out << "ok: " << counts.rows.size() << " rows, " << counts.pattern_ids.size()
      << " pattern columns verified\n";
  return kExitOk;
}

const char* const kExitCodeHelp =
    "Exit codes: 0 success; 2 configuration or usage error; 3 parse error;\n"
    "4 data invariant violation; 5 insufficient data.";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lexitrend: lexical trend analytics over news-article corpora", "lexitrend"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  CommonOptions opt;
  std::string format = "manifest";
  std::string mode = "pooled";
  std::string chart_scope = "country";
  std::string group_id;
  std::string title;
  std::vector<std::string> construct_ids;
  int smooth_override = 0;

  CLI::App* extract = app.add_subcommand(
      "extract", "Extract headline/body text from raw article HTML to JSON lines");
  extract->add_option("--registry", opt.registry_path, "Outlet registry CSV")->required();
  extract->add_option("--input", opt.input_path, "Corpus manifest CSV or record stream")
      ->required();
  extract->add_option("--output", opt.output_path, "Output articles JSONL")->required();
  extract->add_option("--format", format, "Corpus format: manifest|stream (default manifest)")
      ->check(CLI::IsMember({"manifest", "stream"}));
  extract->add_option("--threads", opt.threads, "Worker threads (default 1)");

  CLI::App* count = app.add_subcommand(
      "count", "Count lexicon patterns per article and write the counts CSV");
  count->add_option("--registry", opt.registry_path, "Outlet registry CSV")->required();
  count->add_option("--lexicon", opt.lexicon_path, "Lexicon CSV")->required();
  count->add_option("--input", opt.input_path, "Articles JSONL from `extract`")->required();
  count->add_option("--output", opt.output_path, "Output counts CSV")->required();
  count->add_option("--threads", opt.threads, "Worker threads (default 1)");

  CLI::App* aggregate = app.add_subcommand(
      "aggregate", "Sum per-article counts into outlet-year aggregates");
  aggregate->add_option("--config", opt.config_path, "Analysis config (key=value)");
  aggregate->add_option("--input", opt.input_path, "Counts CSV from `count`")->required();
  aggregate->add_option("--output", opt.output_path, "Output aggregates CSV")->required();

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Compute frequency series, construct averages, CIs and stats");
  analyze->add_option("--registry", opt.registry_path, "Outlet registry CSV")->required();
  analyze->add_option("--lexicon", opt.lexicon_path, "Lexicon CSV")->required();
  analyze->add_option("--config", opt.config_path, "Analysis config (key=value)");
  analyze->add_option("--input", opt.input_path, "Counts CSV or aggregates CSV")->required();
  analyze->add_option("--output", opt.output_path,
                      "Output directory (series.csv, ci.csv, stats.csv)")
      ->required();
  analyze->add_option("--mode", mode, "Scope pooling: pooled|unweighted (default pooled)")
      ->check(CLI::IsMember({"pooled", "unweighted"}));
  analyze->add_option("--smooth", smooth_override,
                      "Override the config smoothing window (odd, >= 1)");

  CLI::App* chart = app.add_subcommand("chart", "Render an SVG chart from analyze output");
  chart->add_option("--input", opt.input_path, "Directory written by `analyze`")->required();
  chart->add_option("--output", opt.output_path, "Output SVG file")->required();
  chart->add_option("--scope", chart_scope, "Panel scope: outlet|country|region|world");
  CLI::Option* construct_opt = chart->add_option(
      "--construct", construct_ids, "Construct id(s) to plot (default: all construct averages)");
  chart->add_option("--group", group_id, "Plot one group's prevalence with CI bands instead")
      ->excludes(construct_opt);
  chart->add_option("--title", title, "Chart title");

  CLI::App* verify = app.add_subcommand("verify", "Re-check counts CSV invariants");
  verify->add_option("--input", opt.input_path, "Counts CSV")->required();

  std::vector<std::string> cli_args(args.rbegin(), args.rend());
  try {
    app.parse(cli_args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (extract->parsed()) return run_extract(opt, format, err);
    if (count->parsed()) return run_count(opt, err);
    if (aggregate->parsed()) return run_aggregate(opt);
    if (analyze->parsed()) return run_analyze(opt, mode, smooth_override, err);
    if (chart->parsed()) return run_chart(opt, chart_scope, construct_ids, group_id, title);
    if (verify->parsed()) return run_verify(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}

}  // namespace lexitrend::report
