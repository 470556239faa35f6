#include "citind/percentiles.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "citind/error.hpp"

namespace citind {

namespace {

// Member positions sorted ascending by value; ties keep input order.
std::vector<std::size_t> ascending_order(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

void check_levels(std::span<const double> levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0 && levels[i] <= 100.0)) {
      throw DomainError(fmt::format("top-x level {} outside (0, 100]", levels[i]));
    }
    if (i > 0 && !(levels[i] > levels[i - 1])) {
      throw DomainError("top-x levels must be strictly increasing");
    }
  }
}

}  // namespace

std::vector<PercentileContext> percentile_contexts(std::span<const double> values) {
  const auto n = values.size();
  std::vector<PercentileContext> out(n);
  const auto order = ascending_order(values);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    const auto tied = end - start;
    // Ranks start+1 .. end share their mean.
    const double rank = static_cast<double>(start) + static_cast<double>(tied + 1) / 2.0;
    for (std::size_t k = start; k < end; ++k) {
      out[order[k]] = PercentileContext{n, rank, start, tied};
    }
    start = end;
  }
  return out;
}

std::vector<double> hazen_percentiles(std::span<const double> values) {
  const auto contexts = percentile_contexts(values);
  std::vector<double> out;
  out.reserve(contexts.size());
  for (const auto& c : contexts) {
    out.push_back(100.0 * (c.average_rank - 0.5) / static_cast<double>(c.n));
  }
  return out;
}

std::vector<double> incites_percentiles(std::span<const double> values,
                                        InCitesOrientation orientation) {
  const auto contexts = percentile_contexts(values);
  std::vector<double> out;
  out.reserve(contexts.size());
  for (const auto& c : contexts) {
    const auto n = static_cast<double>(c.n);
    const auto fewer = static_cast<double>(c.strictly_fewer);
    out.push_back(orientation == InCitesOrientation::inverted ? 100.0 * fewer / n
                                                              : 100.0 * (n - fewer) / n);
  }
  return out;
}

std::vector<double> top_x_fractions(std::span<const double> values, double x) {
  if (!(x > 0.0 && x <= 100.0)) throw DomainError(fmt::format("top-x level {} outside (0, 100]", x));
  const auto n = values.size();
  std::vector<double> out(n, 0.0);
  const double quota = x * static_cast<double>(n) / 100.0;
  if (quota >= static_cast<double>(n)) {
    std::fill(out.begin(), out.end(), 1.0);
    return out;
  }
  auto order = ascending_order(values);
  std::reverse(order.begin(), order.end());
  std::size_t above = 0;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    const auto tied = end - start;
    if (quota < static_cast<double>(above + tied)) {
      const double share = (quota - static_cast<double>(above)) / static_cast<double>(tied);
      for (std::size_t k = start; k < end; ++k) out[order[k]] = share;
      break;
    }
    for (std::size_t k = start; k < end; ++k) out[order[k]] = 1.0;
    above += tied;
    start = end;
  }
  return out;
}

PercentileTable PercentileTable::build(const ReferenceSets& refsets, std::vector<double> levels,
                                       InCitesOrientation orientation) {
  check_levels(levels);
  PercentileTable table;
  table.levels_ = std::move(levels);
  const auto& sets = refsets.sets();
  std::size_t papers = 0;
  for (const auto& set : sets) {
    if (!set.members.empty()) papers = std::max(papers, set.members.back() + 1);
  }
  table.vectors_.assign(papers, PercentileVector{std::vector<double>(table.levels_.size(), 0.0), 0.0, 0.0});
  table.present_.assign(papers, false);

  std::vector<double> values;
  for (const auto& set : sets) {
    values.assign(set.citation_counts.begin(), set.citation_counts.end());
    const auto hazen = hazen_percentiles(values);
    const auto incites = incites_percentiles(values, orientation);
    std::vector<std::vector<double>> fractions;
    for (double level : table.levels_) fractions.push_back(top_x_fractions(values, level));

    for (std::size_t m = 0; m < set.members.size(); ++m) {
      const PaperIndex paper = set.members[m];
      // Each set contributes with weight 1/k for a paper in k sets.
      const double weight = 1.0 / static_cast<double>(refsets.sets_of(paper).size());
      auto& v = table.vectors_[paper];
      v.hazen += weight * hazen[m];
      v.incites += weight * incites[m];
      for (std::size_t l = 0; l < fractions.size(); ++l) v.top_fractions[l] += weight * fractions[l][m];
      table.present_[paper] = true;
    }
  }
  return table;
}

bool PercentileTable::contains(PaperIndex paper) const {
  return paper < present_.size() && present_[paper];
}

const PercentileVector& PercentileTable::paper(PaperIndex paper) const {
  if (!contains(paper)) throw DomainError(fmt::format("paper #{} is in no reference set", paper));
  return vectors_[paper];
}

PercentileVector paper_percentile_vector(const ReferenceSets& refsets, PaperIndex paper,
                                         std::vector<double> levels) {
  check_levels(levels);
  const auto sets = refsets.sets_of(paper);
  if (sets.empty()) throw DomainError(fmt::format("paper #{} is in no reference set", paper));
  PercentileVector out{std::vector<double>(levels.size(), 0.0), 0.0, 0.0};
  const double weight = 1.0 / static_cast<double>(sets.size());
  std::vector<double> values;
  for (std::size_t id : sets) {
    const auto& set = refsets.set(id);
    values.assign(set.citation_counts.begin(), set.citation_counts.end());
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(set.members.begin(), set.members.end(), paper) - set.members.begin());
    out.hazen += weight * hazen_percentiles(values)[pos];
    out.incites += weight * incites_percentiles(values)[pos];
    for (std::size_t l = 0; l < levels.size(); ++l) {
      out.top_fractions[l] += weight * top_x_fractions(values, levels[l])[pos];
    }
  }
  return out;
}

}  // namespace citind
