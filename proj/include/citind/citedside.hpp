#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "citind/corpus.hpp"
#include "citind/refsets.hpp"

namespace citind {

/// A reference-set-normalized value. `degenerate` is set when at least one of
/// the paper's sets had a zero denominator and contributed 0 by convention.
struct NormalizedScore {
  double value = 0.0;
  bool degenerate = false;
};

/// Citations over the set's mean citations, averaged across the paper's sets.
/// Throws DomainError when the paper belongs to no reference set.
NormalizedScore mncs(const ReferenceSets& refsets, PaperIndex paper);

/// Citations over the set's mean number of cited references, averaged across
/// the paper's sets. A zero mean with non-zero citations is a DomainError.
NormalizedScore csncr(const ReferenceSets& refsets, PaperIndex paper);

// Characteristic scores and scales.

inline constexpr int kDefaultCssClasses = 4;

struct CssThresholds {
  std::vector<double> bounds;  // strictly increasing b_1 < b_2 < ...
  int max_classes = kDefaultCssClasses;
};

/// Iteratively truncates `values` at their mean. Stops after max_classes - 1
/// thresholds, when the truncated sample is empty, or when the mean repeats.
/// Throws DomainError for an empty input.
CssThresholds css_thresholds(std::span<const double> values, int max_classes = kDefaultCssClasses);

/// Class 1 below b_1, class k for b_{k-1} <= c < b_k, and max_classes at or
/// above the last threshold.
int css_class(double citations, const CssThresholds& thresholds);

/// Thresholds of every reference set, parallel to refsets.sets().
std::vector<CssThresholds> css_thresholds_by_set(const ReferenceSets& refsets,
                                                 int max_classes = kDefaultCssClasses);

/// Mean CSS class of a paper over its reference sets.
double css_score(const ReferenceSets& refsets, std::span<const CssThresholds> thresholds,
                 PaperIndex paper);

/// Citations of the paper over the mean citations of its co-cited papers, both
/// counted in `window`. Co-cited papers whose window is immature are skipped.
/// Empty when there is nothing to compare against or the mean is zero.
std::optional<double> rcr_simplified(const Corpus& corpus, PaperIndex paper,
                                     const CitationWindow& window);

}  // namespace citind
