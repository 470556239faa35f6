#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "citind/refsets.hpp"

namespace citind {

/// Rank bookkeeping of one value inside a set.
struct PercentileContext {
  std::size_t n = 0;
  double average_rank = 0.0;  // ascending, ties share the mean of their ranks
  std::size_t strictly_fewer = 0;
  std::size_t tied = 0;  // members with an equal value, the paper included
};

std::vector<PercentileContext> percentile_contexts(std::span<const double> values);

/// 100 * (average_rank - 0.5) / n for every member.
std::vector<double> hazen_percentiles(std::span<const double> values);

enum class InCitesOrientation {
  inverted,  // share of members with strictly fewer citations (higher is better)
  raw,       // share of members with at least as many citations (lower is better)
};

std::vector<double> incites_percentiles(std::span<const double> values,
                                        InCitesOrientation orientation = InCitesOrientation::inverted);

/// Fractional membership in the top x% (0 < x <= 100). Members tied at the
/// threshold share the remaining quota equally, so the fractions sum to x*n/100.
/// Throws DomainError for x outside (0, 100].
std::vector<double> top_x_fractions(std::span<const double> values, double x);

/// Per-paper percentile values averaged over the paper's reference sets.
struct PercentileVector {
  std::vector<double> top_fractions;  // parallel to the table's levels
  double hazen = 0.0;
  double incites = 0.0;
};

class PercentileTable {
 public:
  /// `levels` must be strictly increasing, each in (0, 100].
  static PercentileTable build(const ReferenceSets& refsets, std::vector<double> levels,
                               InCitesOrientation orientation = InCitesOrientation::inverted);

  std::span<const double> levels() const noexcept { return levels_; }
  /// Throws DomainError when the paper belongs to no reference set.
  const PercentileVector& paper(PaperIndex paper) const;
  bool contains(PaperIndex paper) const;

 private:
  std::vector<double> levels_;
  std::vector<PercentileVector> vectors_;  // indexed by PaperIndex
  std::vector<bool> present_;
};

/// Single-paper convenience wrapper around PercentileTable.
PercentileVector paper_percentile_vector(const ReferenceSets& refsets, PaperIndex paper,
                                         std::vector<double> levels = {1.0, 10.0, 50.0});

}  // namespace citind
