#pragma once

#include <span>
#include <string>
#include <vector>

#include "citind/percentiles.hpp"

namespace citind {

/// Class weights ordered from the most selective top class down to the bottom
/// class: with levels {1, 10, 50} that is top1, top10, top50, bottom50.
struct I3Weights {
  std::vector<double> values;

  /// 100 / 10 / 2 / 1.
  static I3Weights defaults();
  double min() const;
  double max() const;
};

/// Nested-corrected fractional paper counts per percentile class, ordered like
/// I3Weights (top class first, bottom class last).
struct ClassCounts {
  std::vector<double> counts;

  double total() const;
};

/// Class labels such as "top1", "top10", "top50", "bottom50" for ascending levels.
std::vector<std::string> class_labels(std::span<const double> levels);

/// Aggregates per-paper top-x memberships (each parallel to ascending `levels`)
/// into disjoint class counts. Throws std::logic_error if nesting is violated.
ClassCounts class_counts(std::span<const std::vector<double>> memberships, std::span<const double> levels);

/// Same as above for the papers of a PercentileTable.
ClassCounts class_counts(const PercentileTable& table, std::span<const PaperIndex> papers);

double i3_score(const ClassCounts& counts, const I3Weights& weights);

struct I3Bounds {
  double min = 0.0;
  double max = 0.0;
};

I3Bounds i3_bounds(double n, const I3Weights& weights);

struct I3PerPaper {
  double per_paper = 0.0;       // I3 / N
  double percent_of_max = 0.0;  // 100 * I3 / (N * max weight)
};

/// Throws DomainError when n <= 0.
I3PerPaper i3_per_paper(double i3, double n, const I3Weights& weights);

/// Weighted class membership of a single paper; its group mean is I3/N.
double i3_contribution(std::span<const double> top_fractions, const I3Weights& weights);

/// Checks weight count against levels and strict decrease; throws ConfigError.
void validate_weights(const I3Weights& weights, std::span<const double> levels);

}  // namespace citind
