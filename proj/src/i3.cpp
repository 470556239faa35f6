#include "citind/i3.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "citind/error.hpp"

namespace citind {

namespace {

// Tolerance for nesting checks on accumulated fractional sums.
constexpr double kNestingSlack = 1e-9;

std::string level_label(double level) { return fmt::format("{:g}", level); }

}  // namespace

I3Weights I3Weights::defaults() { return I3Weights{{100.0, 10.0, 2.0, 1.0}}; }

double I3Weights::min() const { return *std::min_element(values.begin(), values.end()); }
double I3Weights::max() const { return *std::max_element(values.begin(), values.end()); }

double ClassCounts::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

std::vector<std::string> class_labels(std::span<const double> levels) {
  std::vector<std::string> out;
  for (double level : levels) out.push_back("top" + level_label(level));
  out.push_back("bottom" + level_label(100.0 - (levels.empty() ? 0.0 : levels.back())));
  return out;
}

void validate_weights(const I3Weights& weights, std::span<const double> levels) {
  if (weights.values.size() != levels.size() + 1) {
    throw ConfigError(fmt::format("{} I3 weights given for {} levels, expected {}",
                                  weights.values.size(), levels.size(), levels.size() + 1));
  }
  for (std::size_t i = 0; i < weights.values.size(); ++i) {
    if (!(weights.values[i] > 0.0)) throw ConfigError("I3 weights must be positive");
    if (i > 0 && !(weights.values[i] < weights.values[i - 1])) {
      throw ConfigError("I3 weights must be strictly decreasing from the top class");
    }
  }
}

ClassCounts class_counts(std::span<const std::vector<double>> memberships,
                         std::span<const double> levels) {
  const auto k = levels.size();
  std::vector<double> cumulative(k, 0.0);
  for (const auto& m : memberships) {
    if (m.size() != k) throw std::invalid_argument("membership vector does not match levels");
    for (std::size_t l = 0; l < k; ++l) cumulative[l] += m[l];
  }
  const auto n = static_cast<double>(memberships.size());
  ClassCounts out;
  out.counts.resize(k + 1);
  double previous = 0.0;
  for (std::size_t l = 0; l < k; ++l) {
    out.counts[l] = cumulative[l] - previous;
    previous = cumulative[l];
  }
  out.counts[k] = n - previous;
  for (double& c : out.counts) {
    if (c < -kNestingSlack) throw std::logic_error("percentile class nesting violated");
    c = std::max(c, 0.0);
  }
  return out;
}

ClassCounts class_counts(const PercentileTable& table, std::span<const PaperIndex> papers) {
  std::vector<std::vector<double>> memberships;
  memberships.reserve(papers.size());
  for (PaperIndex p : papers) memberships.push_back(table.paper(p).top_fractions);
  return class_counts(memberships, table.levels());
}

double i3_score(const ClassCounts& counts, const I3Weights& weights) {
  if (counts.counts.size() != weights.values.size()) {
    throw std::invalid_argument("class counts and weights differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < counts.counts.size(); ++i) sum += counts.counts[i] * weights.values[i];
  return sum;
}

I3Bounds i3_bounds(double n, const I3Weights& weights) {
  return {n * weights.min(), n * weights.max()};
}

I3PerPaper i3_per_paper(double i3, double n, const I3Weights& weights) {
  if (!(n > 0.0)) throw DomainError("I3/N needs at least one paper");
  return {i3 / n, 100.0 * i3 / i3_bounds(n, weights).max};
}

double i3_contribution(std::span<const double> top_fractions, const I3Weights& weights) {
  if (weights.values.size() != top_fractions.size() + 1) {
    throw std::invalid_argument("fractions and weights differ in length");
  }
  double sum = 0.0;
  double previous = 0.0;
  for (std::size_t l = 0; l < top_fractions.size(); ++l) {
    sum += (top_fractions[l] - previous) * weights.values[l];
    previous = top_fractions[l];
  }
  return sum + (1.0 - previous) * weights.values.back();
}

}  // namespace citind
