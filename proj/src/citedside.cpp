#include "citind/citedside.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "citind/error.hpp"

namespace citind {

namespace {

std::span<const std::size_t> require_sets(const ReferenceSets& refsets, PaperIndex paper) {
  auto sets = refsets.sets_of(paper);
  if (sets.empty()) throw DomainError(fmt::format("paper #{} is in no reference set", paper));
  return sets;
}

double mean(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

NormalizedScore mncs(const ReferenceSets& refsets, PaperIndex paper) {
  const auto sets = require_sets(refsets, paper);
  NormalizedScore score;
  double sum = 0.0;
  for (std::size_t id : sets) {
    const auto& set = refsets.set(id);
    const auto citations = static_cast<double>(set.count_of(paper));
    // A zero mean means every member is uncited.
    if (set.mean_citations == 0.0) {
      score.degenerate = true;
      continue;
    }
    sum += citations / set.mean_citations;
  }
  score.value = sum / static_cast<double>(sets.size());
  return score;
}

NormalizedScore csncr(const ReferenceSets& refsets, PaperIndex paper) {
  const auto sets = require_sets(refsets, paper);
  NormalizedScore score;
  double sum = 0.0;
  for (std::size_t id : sets) {
    const auto& set = refsets.set(id);
    const auto citations = static_cast<double>(set.count_of(paper));
    if (set.mean_refs == 0.0) {
      if (citations != 0.0) {
        throw DomainError(fmt::format("CSNCR undefined: set {} has no cited references", to_string(set.key)));
      }
      score.degenerate = true;
      continue;
    }
    sum += citations / set.mean_refs;
  }
  score.value = sum / static_cast<double>(sets.size());
  return score;
}

CssThresholds css_thresholds(std::span<const double> values, int max_classes) {
  if (values.empty()) throw DomainError("CSS thresholds need at least one value");
  if (max_classes < 2) throw DomainError("CSS needs at least two classes");
  CssThresholds out;
  out.max_classes = max_classes;
  std::vector<double> sample(values.begin(), values.end());
  while (static_cast<int>(out.bounds.size()) < max_classes - 1 && !sample.empty()) {
    const double b = mean(sample);
    if (!out.bounds.empty() && b <= out.bounds.back()) break;
    out.bounds.push_back(b);
    std::erase_if(sample, [b](double v) { return !(v > b); });
  }
  return out;
}

int css_class(double citations, const CssThresholds& thresholds) {
  const auto& b = thresholds.bounds;
  if (b.empty() || citations < b.front()) return 1;
  // Upper classes collapse into the top one when thresholds are missing.
  if (citations >= b.back()) return thresholds.max_classes;
  const auto above = std::upper_bound(b.begin(), b.end(), citations) - b.begin();
  return static_cast<int>(above) + 1;
}

std::vector<CssThresholds> css_thresholds_by_set(const ReferenceSets& refsets, int max_classes) {
  std::vector<CssThresholds> out;
  out.reserve(refsets.sets().size());
  std::vector<double> values;
  for (const auto& set : refsets.sets()) {
    values.assign(set.citation_counts.begin(), set.citation_counts.end());
    out.push_back(css_thresholds(values, max_classes));
  }
  return out;
}

double css_score(const ReferenceSets& refsets, std::span<const CssThresholds> thresholds,
                 PaperIndex paper) {
  const auto sets = require_sets(refsets, paper);
  double sum = 0.0;
  for (std::size_t id : sets) {
    sum += css_class(static_cast<double>(refsets.set(id).count_of(paper)), thresholds[id]);
  }
  return sum / static_cast<double>(sets.size());
}

std::optional<double> rcr_simplified(const Corpus& corpus, PaperIndex paper,
                                     const CitationWindow& window) {
  const auto focal = citation_count(corpus, paper, window);
  std::int64_t total = 0;
  std::size_t counted = 0;
  for (PaperIndex other : cocited_set(corpus, paper)) {
    if (!is_mature(corpus, other, window)) continue;
    total += citation_count(corpus, other, window);
    ++counted;
  }
  if (counted == 0 || total == 0) return std::nullopt;
  const double expected = static_cast<double>(total) / static_cast<double>(counted);
  return static_cast<double>(focal) / expected;
}

}  // namespace citind
