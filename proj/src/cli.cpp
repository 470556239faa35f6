#include "citind/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "citind/config.hpp"
#include "citind/corpus.hpp"
#include "citind/engine.hpp"
#include "citind/error.hpp"
#include "citind/icite.hpp"
#include "citind/report.hpp"
#include "citind/validity.hpp"
#include "tabular.hpp"

namespace citind {

namespace {

struct Options {
  std::string papers;
  std::string citations;
  std::string config;
  std::string out;
  std::string format;
  std::string window;
  std::optional<int> census_year;
  std::optional<int> precision;
  bool enable_network = false;
  // compute
  std::string icite_scores;
  // validate
  std::string table;
  std::vector<std::string> indicators;
  std::string means_out;
  std::string correlations_out;
  // icite
  std::string pmid_map;
  std::string cache;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int ingest();
  int compute();
  int validate();
  int icite();
  int report();

 private:
  RunConfig config() const;
  Corpus corpus(const RunConfig& c, bool need_citations) const;
  OutputFormat format(const RunConfig& c) const { return parse_output_format(c.format); }
  void emit(const std::function<void(std::ostream&)>& writer) const;
  IndicatorTable read_table(const std::string& path) const;
  ExternalRcr read_icite_scores(const std::string& path) const;

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

RunConfig Runner::config() const {
  RunConfig c = o_.config.empty() ? RunConfig{} : load_config(o_.config);
  if (o_.census_year) c.census_year = *o_.census_year;
  if (!o_.window.empty()) {
    if (o_.window == "open") {
      c.citation_window = CitationWindow::open();
    } else {
      int w = 0;
      try {
        std::size_t used = 0;
        w = std::stoi(o_.window, &used);
        if (used != o_.window.size()) w = 0;
      } catch (const std::exception&) {
        w = 0;
      }
      if (w < 1) throw ConfigError("--window must be \"open\" or a positive integer");
      c.citation_window = CitationWindow::fixed(w);
    }
  }
  if (!o_.format.empty()) c.format = o_.format;
  if (o_.precision) c.precision = *o_.precision;
  if (o_.enable_network) c.icite.enabled = true;
  c.validate();
  return c;
}

Corpus Runner::corpus(const RunConfig& c, bool need_citations) const {
  if (o_.papers.empty()) throw ConfigError("--papers is required");
  Corpus corpus = load_papers(std::filesystem::path(o_.papers), c.paper_options());
  if (!o_.citations.empty()) {
    corpus = load_citations(std::filesystem::path(o_.citations), corpus, c.citation_options());
  } else if (need_citations) {
    throw ConfigError("--citations is required");
  }
  for (const auto& d : corpus.load_stats().diagnostics) {
    err_ << "warning: line " << d.line << ": " << d.message << '\n';
  }
  return corpus;
}

void Runner::emit(const std::function<void(std::ostream&)>& writer) const {
  if (o_.out.empty() || o_.out == "-") {
    // buffer so a failing writer leaves stdout untouched
    std::ostringstream buffer;
    writer(buffer);
    out_ << buffer.str();
    return;
  }
  write_file_atomically(o_.out, writer);
}

IndicatorTable Runner::read_table(const std::string& path) const {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open table " + path);
  return detect_format(path) == InputFormat::jsonl ? read_table_json(in) : read_table_csv(in);
}

ExternalRcr Runner::read_icite_scores(const std::string& path) const {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open iCite scores " + path);
  ExternalRcr scores;
  detail::read_rows(in, InputFormat::csv, [&](const detail::TabularRow& row) {
    if (row.defect) throw InputError(*row.defect, row.line);
    auto id = row.get("paper_id");
    if (!id) throw InputError("missing paper_id", row.line);
    std::optional<double> rcr;
    if (auto text = row.get("rcr_icite")) {
      try {
        rcr = std::stod(*text);
      } catch (const std::exception&) {
        throw InputError("rcr_icite: not a number", row.line);
      }
    }
    scores[*id] = rcr;
  });
  return scores;
}

int Runner::ingest() {
  const auto c = config();
  const auto corpus = this->corpus(c, false);
  const auto report = validate_corpus(corpus);
  emit([&](std::ostream& os) { emit_validation(report, format(c), os); });
  return 0;
}

int Runner::compute() {
  const auto c = config();
  const auto corpus = this->corpus(c, true);
  std::optional<ExternalRcr> icite;
  if (!o_.icite_scores.empty()) icite = read_icite_scores(o_.icite_scores);
  const auto result = compute_indicators(corpus, c, icite ? &*icite : nullptr);
  if (!result.immature.empty()) {
    err_ << fmt::format("excluded {} paper(s) with an immature citation window:", result.immature.size());
    for (const auto& id : result.immature) err_ << ' ' << id;
    err_ << '\n';
  }
  if (!result.excluded_doc_type.empty()) {
    err_ << fmt::format("excluded {} paper(s) by document type\n", result.excluded_doc_type.size());
  }
  if (result.degenerate_sets > 0) {
    err_ << fmt::format("warning: {} reference set(s) without citations\n", result.degenerate_sets);
  }
  if (result.sncs_skipped > 0) {
    err_ << fmt::format("warning: {} citing-side term(s) skipped for a zero denominator\n",
                        result.sncs_skipped);
  }
  for (const auto& w : result.warnings) err_ << "warning: " << w << '\n';
  emit([&](std::ostream& os) { emit_table(result.table, format(c), os, {c.precision}); });
  return 0;
}

int Runner::validate() {
  const auto c = config();
  const auto corpus = this->corpus(c, o_.table.empty());
  IndicatorTable table;
  if (!o_.table.empty()) {
    table = read_table(o_.table);
  } else {
    auto result = compute_indicators(corpus, c);
    if (!result.immature.empty()) {
      err_ << fmt::format("excluded {} paper(s) with an immature citation window\n", result.immature.size());
    }
    table = std::move(result.table);
  }
  const auto groups = group_by_scores(corpus, c.css_classes);
  std::vector<std::string> indicators = o_.indicators.empty() ? table.columns : o_.indicators;
  const auto report = analyze_validity(table, groups, indicators, c.missing_values);
  for (const auto& [name, reason] : report.undefined_growth) {
    err_ << "warning: growth of " << name << " undefined: " << reason << '\n';
  }
  const FormatOptions fo{c.precision};
  if (!o_.means_out.empty()) {
    write_file_atomically(o_.means_out, [&](std::ostream& os) { emit_means_csv(report.means, os, fo); });
  }
  if (!o_.correlations_out.empty()) {
    write_file_atomically(o_.correlations_out,
                          [&](std::ostream& os) { emit_correlations_csv(report.correlations, os, fo); });
  }
  emit([&](std::ostream& os) { emit_validity(report, format(c), os, fo); });
  return 0;
}

int Runner::icite() {
  auto c = config();
  c.icite.base_url = icite_base_url(c.icite.base_url);
  const auto corpus = this->corpus(c, false);
  const bool online = c.icite.enabled || network_enabled_by_env();

  HttpGet get;
  if (online) {
    get = make_http_transport();
  } else {
    get = [](const std::string& url) -> HttpResponse {
      throw IciteError("network access is disabled (pass --enable-network or set "
                       "CITIND_ENABLE_NETWORK=1); not fetching " + url);
    };
  }

  std::unique_ptr<PmidResolver> resolver;
  if (!o_.pmid_map.empty()) {
    resolver = std::make_unique<MapResolver>(MapResolver::from_file(o_.pmid_map));
  } else if (online) {
    resolver = std::make_unique<IdConverterResolver>(get, c.icite.resolver_url);
  } else {
    throw ConfigError("icite needs --pmid-map or --enable-network");
  }

  IciteCache cache = o_.cache.empty() ? IciteCache{} : IciteCache::load(o_.cache);
  IciteClient client(get, c.icite);
  const auto rows = enrich_with_icite(corpus, *resolver, client, cache);
  if (!o_.cache.empty()) cache.save(o_.cache);

  std::size_t unresolved = 0, unscored = 0;
  for (const auto& r : rows) {
    if (!r.pmid) ++unresolved;
    else if (!r.rcr) ++unscored;
  }
  if (unresolved) err_ << fmt::format("{} paper(s) without a pmid\n", unresolved);
  if (unscored) err_ << fmt::format("{} paper(s) without an iCite score\n", unscored);

  emit([&](std::ostream& os) {
    os << "paper_id,doi,pmid,rcr_icite\n";
    for (const auto& r : rows) {
      os << r.paper_id << ',' << r.doi.value_or("") << ',' << r.pmid.value_or("") << ','
         << (r.rcr ? format_real(*r.rcr, c.precision) : "") << '\n';
    }
  });
  return 0;
}

int Runner::report() {
  const auto c = config();
  if (o_.table.empty()) throw ConfigError("--table is required");
  const auto table = read_table(o_.table);
  emit([&](std::ostream& os) { emit_table(table, format(c), os, {c.precision}); });
  return 0;
}

void add_common(CLI::App* cmd, Options& o, bool needs_papers) {
  auto* papers = cmd->add_option("--papers", o.papers, "Paper records (CSV or JSON lines)");
  if (needs_papers) papers->required();
  cmd->add_option("--config", o.config, "Run configuration (JSON)");
  cmd->add_option("--out", o.out, "Output file; standard output when omitted");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--census-year", o.census_year, "Last year of citation data");
  cmd->add_option("--precision", o.precision, "Significant digits; 0 = shortest exact");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Field-normalized citation indicators and their convergent validity", "citind"};
  app.require_subcommand(1);
  Options o;

  auto* ingest = app.add_subcommand("ingest", "Validate inputs and summarize the corpus");
  add_common(ingest, o, true);
  ingest->add_option("--citations", o.citations, "Citation edges (CSV or JSON lines)");

  auto* compute = app.add_subcommand("compute", "Compute the per-paper indicator table");
  add_common(compute, o, true);
  compute->add_option("--citations", o.citations, "Citation edges")->required();
  compute->add_option("--window", o.window, "Citation window: open or a number of years");
  compute->add_option("--icite", o.icite_scores, "Scores written by the icite command");

  auto* validate = app.add_subcommand("validate", "Group means, growth rates and correlations");
  add_common(validate, o, true);
  validate->add_option("--citations", o.citations, "Citation edges");
  validate->add_option("--window", o.window, "Citation window: open or a number of years");
  validate->add_option("--table", o.table, "Use a previously computed indicator table");
  validate->add_option("--indicators", o.indicators, "Indicators to analyse (default: all columns)")
      ->delimiter(',');
  validate->add_option("--means-out", o.means_out, "Also write the group means as CSV");
  validate->add_option("--correlations-out", o.correlations_out, "Also write the Spearman matrix as CSV");

  auto* icite = app.add_subcommand("icite", "Retrieve RCR scores from iCite");
  add_common(icite, o, true);
  icite->add_option("--pmid-map", o.pmid_map, "JSON object mapping DOI to pmid");
  icite->add_option("--cache", o.cache, "JSON-lines record cache, read and updated");
  icite->add_flag("--enable-network", o.enable_network, "Allow HTTPS requests");

  auto* report = app.add_subcommand("report", "Re-emit an indicator table");
  add_common(report, o, false);
  report->add_option("--table", o.table, "Indicator table (CSV or JSON)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  Runner runner(o, out, err);
  try {
    if (*ingest) return runner.ingest();
    if (*compute) return runner.compute();
    if (*validate) return runner.validate();
    if (*icite) return runner.icite();
    if (*report) return runner.report();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace citind
