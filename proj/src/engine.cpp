#include "citind/engine.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "citind/citedside.hpp"
#include "citind/citingside.hpp"
#include "citind/error.hpp"
#include "citind/i3.hpp"
#include "citind/percentiles.hpp"
#include "citind/refsets.hpp"

namespace citind {

namespace {

std::string level_name(double level) { return fmt::format("pptop{:g}", level); }

}  // namespace

std::vector<std::string> indicator_columns(const RunConfig& config, bool with_icite) {
  std::vector<std::string> cols{"citations_window", "citations_open", "mncs",  "csncr",
                                "css_class",        "sncs1",          "sncs2", "sncs3",
                                "hazen",
                                config.incites == InCitesOrientation::inverted ? "incites_inv"
                                                                              : "incites_raw"};
  for (auto it = config.top_x_levels.rbegin(); it != config.top_x_levels.rend(); ++it) {
    cols.push_back(level_name(*it));
  }
  cols.push_back("i3");
  cols.push_back("rcr_simplified");
  if (with_icite) cols.push_back("rcr_icite");
  return cols;
}

ComputeResult compute_indicators(const Corpus& corpus, const RunConfig& config,
                                 const ExternalRcr* icite) {
  config.validate();
  ComputeResult result;
  const auto short_window = CitationWindow::fixed(config.minimum_window);
  const auto refsets = ReferenceSets::build(corpus, config.refset_options());
  const auto css = css_thresholds_by_set(refsets, config.css_classes);
  const auto percentiles = PercentileTable::build(refsets, config.top_x_levels, config.incites);
  SourceNormalizer normalizer(corpus, config.citation_window, config.reference_years);

  for (const auto& set : refsets.sets()) {
    if (set.mean_citations == 0.0) ++result.degenerate_sets;
  }

  auto& table = result.table;
  table.columns = indicator_columns(config, icite != nullptr);

  for (PaperIndex i = 0; i < corpus.size(); ++i) {
    const auto& paper = corpus.paper(i);
    if (std::find(config.doc_types.begin(), config.doc_types.end(), paper.doc_type) ==
        config.doc_types.end()) {
      result.excluded_doc_type.push_back(paper.id);
      continue;
    }
    if (!is_mature(corpus, i, short_window) || !is_mature(corpus, i, config.citation_window)) {
      result.immature.push_back(paper.id);
      continue;
    }

    std::vector<std::optional<double>> row;
    row.reserve(table.columns.size());
    row.push_back(static_cast<double>(citation_count(corpus, i, short_window)));
    row.push_back(static_cast<double>(citation_count(corpus, i, CitationWindow::open())));
    row.push_back(mncs(refsets, i).value);
    try {
      row.push_back(csncr(refsets, i).value);
    } catch (const DomainError& e) {
      result.warnings.push_back(fmt::format("{}: {}", paper.id, e.what()));
      row.push_back(std::nullopt);
    }
    row.push_back(css_score(refsets, css, i));

    const auto sncs = normalizer.score(i);
    result.sncs_skipped += sncs.skipped1 + sncs.skipped2 + sncs.skipped3;
    row.push_back(sncs.sncs1);
    row.push_back(sncs.sncs2);
    row.push_back(sncs.sncs3);

    const auto& pv = percentiles.paper(i);
    row.push_back(pv.hazen);
    row.push_back(pv.incites);
    for (auto it = pv.top_fractions.rbegin(); it != pv.top_fractions.rend(); ++it) row.push_back(*it);
    row.push_back(i3_contribution(pv.top_fractions, config.i3_weights));
    row.push_back(rcr_simplified(corpus, i, config.citation_window));

    if (icite) {
      auto it = icite->find(paper.id);
      row.push_back(it == icite->end() ? std::nullopt : it->second);
    }

    table.paper_ids.push_back(paper.id);
    table.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace citind
