#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "citind/corpus.hpp"
#include "citind/i3.hpp"
#include "citind/percentiles.hpp"
#include "citind/refsets.hpp"
#include "citind/validity.hpp"

namespace citind {

struct IciteConfig {
  bool enabled = false;
  std::string base_url = "https://icite.od.nih.gov/api";
  std::string resolver_url = "https://www.ncbi.nlm.nih.gov/pmc/utils/idconv/v1.0/";
  std::string rcr_field = "relative_citation_ratio";
  std::size_t batch_size = 200;
  std::size_t concurrency = 4;
  int max_retries = 3;
};

/// Everything a run needs besides the input files. Loaded from a JSON file;
/// absent keys keep the defaults below.
struct RunConfig {
  int census_year = 2017;
  std::optional<int> min_year;
  /// Window of the normalized indicators.
  CitationWindow citation_window = CitationWindow::open();
  /// Short window of the citations_window column; papers that cannot fill it
  /// are excluded from the run.
  int minimum_window = 3;
  /// Citing-side reference window; defaults to the focal citation window length.
  std::optional<int> reference_years;
  std::vector<double> top_x_levels{1.0, 10.0, 50.0};
  I3Weights i3_weights = I3Weights::defaults();
  std::vector<DocType> doc_types{DocType::article, DocType::review};
  bool partition_by_doc_type = false;
  bool drop_self_citations = false;
  ReferenceBasis csncr_basis = ReferenceBasis::all_listed;
  MissingPolicy missing_values = MissingPolicy::listwise;
  InCitesOrientation incites = InCitesOrientation::inverted;
  int css_classes = kDefaultCssClasses;
  std::string format = "csv";
  int precision = 6;  // significant digits; 0 = shortest exact representation
  bool strict_input = true;
  ColumnMapping paper_columns;
  ColumnMapping citation_columns;
  IciteConfig icite;

  /// Throws ConfigError on violated invariants.
  void validate() const;

  PaperLoadOptions paper_options() const;
  CitationLoadOptions citation_options() const;
  RefSetOptions refset_options() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);
/// JSON rendering of a config, accepted back by parse_config.
std::string dump_config(const RunConfig& config);

}  // namespace citind
