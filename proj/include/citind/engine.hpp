#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "citind/config.hpp"
#include "citind/corpus.hpp"
#include "citind/indicator_table.hpp"

namespace citind {

/// Externally retrieved RCR values keyed by paper_id; nullopt marks "no score".
using ExternalRcr = std::map<std::string, std::optional<double>>;

struct ComputeResult {
  IndicatorTable table;
  /// Papers that cannot fill the minimum or indicator citation window.
  std::vector<std::string> immature;
  /// Papers whose document type is excluded from reference sets.
  std::vector<std::string> excluded_doc_type;
  std::size_t degenerate_sets = 0;  // reference sets whose mean citations is zero
  std::size_t sncs_skipped = 0;     // citations skipped for a zero denominator
  std::vector<std::string> warnings;
};

/// Column names of the indicator table for a configuration, in emission order.
std::vector<std::string> indicator_columns(const RunConfig& config, bool with_icite);

/// Computes every per-paper indicator. Rows are the eligible papers ordered by
/// paper_id; `icite` adds an rcr_icite column when given.
ComputeResult compute_indicators(const Corpus& corpus, const RunConfig& config,
                                 const ExternalRcr* icite = nullptr);

}  // namespace citind
