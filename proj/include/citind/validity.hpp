#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citind/citedside.hpp"
#include "citind/corpus.hpp"
#include "citind/indicator_table.hpp"

namespace citind {

/// Quality classes of scored papers (1 = lowest), obtained with CSS on the scores.
struct QualityGroups {
  std::map<std::string, int> assignment;  // paper_id -> group
  CssThresholds thresholds;

  std::map<int, std::size_t> sizes() const;
};

/// Groups the corpus papers carrying a quality score. Unscored papers are left
/// out. Throws DomainError("no scored papers") when nothing is scored.
QualityGroups group_by_scores(const Corpus& corpus, int max_classes = kDefaultCssClasses);
QualityGroups group_by_values(std::span<const std::pair<std::string, double>> scored,
                              int max_classes = kDefaultCssClasses);

enum class MissingPolicy {
  listwise,       // drop a paper if any analysed indicator is missing
  per_indicator,  // drop a paper only from the indicators it lacks
};

/// Arithmetic indicator means per quality group.
struct GroupMeans {
  std::vector<std::string> indicators;
  std::vector<int> groups;  // ascending, only groups with analysed papers
  std::vector<std::size_t> group_sizes;
  std::vector<std::vector<double>> means;            // [indicator][group]
  std::vector<std::vector<std::size_t>> coverage;  // values used, [indicator][group]
};

/// Throws DomainError when an indicator has no value in one of the groups.
GroupMeans group_means(const IndicatorTable& table, const QualityGroups& groups,
                       std::span<const std::string> indicators,
                       MissingPolicy policy = MissingPolicy::listwise);

/// Percentage growth between consecutive group means.
struct GrowthRates {
  std::vector<double> rates;  // g_2 .. g_k
  double sagr = 0.0;          // sum of rates
  double aagr = 0.0;          // sagr / (k - 1)
};

/// Throws DomainError for fewer than two means or a zero base mean.
GrowthRates growth_rates(std::span<const double> means);

struct IndicatorGrowth {
  std::string indicator;
  std::vector<double> means;
  GrowthRates growth;
};

struct GrowthRow {
  std::string indicator;
  std::vector<double> means;
  GrowthRates growth;
  int rank = 0;
  std::optional<double> diff_to_previous;  // sagr - previous sagr, absent for rank 1
};

struct GrowthReport {
  std::vector<GrowthRow> rows;  // rank order
};

/// Orders by SAGR descending; ties go to the lexicographically smaller name.
GrowthReport rank_indicators(std::vector<IndicatorGrowth> indicators);

/// Ascending ranks with ties sharing their average rank (1-based).
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation. Throws DomainError for mismatched lengths, fewer than
/// two observations or a constant input.
double pearson(std::span<const double> x, std::span<const double> y);

/// Tie-aware Spearman rank correlation; same error contract as pearson.
double spearman(std::span<const double> x, std::span<const double> y);

struct CorrelationMatrix {
  std::vector<std::string> indicators;
  std::vector<std::vector<std::optional<double>>> values;  // symmetric; nullopt if undefined
  std::vector<std::vector<std::size_t>> observations;
};

CorrelationMatrix correlation_matrix(const IndicatorTable& table,
                                     std::span<const std::string> indicators,
                                     MissingPolicy policy = MissingPolicy::listwise);

/// Least-squares slope of m_j / m_1 against j = 1..k (stability diagnostic).
double normalized_slope(std::span<const double> means);

struct ValidityReport {
  QualityGroups groups;
  GroupMeans means;
  GrowthReport growth;
  std::vector<std::pair<std::string, std::string>> undefined_growth;  // indicator, reason
  std::map<std::string, double> slopes;
  CorrelationMatrix correlations;
};

ValidityReport analyze_validity(const IndicatorTable& table, const QualityGroups& groups,
                                std::span<const std::string> indicators,
                                MissingPolicy policy = MissingPolicy::listwise);

}  // namespace citind
