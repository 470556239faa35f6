#include "citind/validity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "citind/error.hpp"

namespace citind {

namespace {

std::vector<std::size_t> resolve_columns(const IndicatorTable& table,
                                         std::span<const std::string> indicators) {
  std::vector<std::size_t> cols;
  cols.reserve(indicators.size());
  for (const auto& name : indicators) cols.push_back(table.column_index(name));
  return cols;
}

bool complete(const std::vector<std::optional<double>>& row, std::span<const std::size_t> cols) {
  return std::all_of(cols.begin(), cols.end(), [&](std::size_t c) { return row[c].has_value(); });
}

}  // namespace

std::map<int, std::size_t> QualityGroups::sizes() const {
  std::map<int, std::size_t> out;
  for (const auto& [id, group] : assignment) ++out[group];
  return out;
}

QualityGroups group_by_values(std::span<const std::pair<std::string, double>> scored,
                              int max_classes) {
  if (scored.empty()) throw DomainError("no scored papers");
  std::vector<double> values;
  values.reserve(scored.size());
  for (const auto& [id, v] : scored) values.push_back(v);
  QualityGroups out;
  out.thresholds = css_thresholds(values, max_classes);
  for (const auto& [id, v] : scored) out.assignment[id] = css_class(v, out.thresholds);
  return out;
}

QualityGroups group_by_scores(const Corpus& corpus, int max_classes) {
  std::vector<std::pair<std::string, double>> scored;
  for (const auto& p : corpus.papers()) {
    if (p.quality_score) scored.emplace_back(p.id, static_cast<double>(*p.quality_score));
  }
  return group_by_values(scored, max_classes);
}

GroupMeans group_means(const IndicatorTable& table, const QualityGroups& groups,
                       std::span<const std::string> indicators, MissingPolicy policy) {
  const auto cols = resolve_columns(table, indicators);

  // Rows taking part in the analysis, keyed by their group.
  std::map<int, std::vector<std::size_t>> rows_by_group;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    auto it = groups.assignment.find(table.paper_ids[r]);
    if (it == groups.assignment.end()) continue;
    if (policy == MissingPolicy::listwise && !complete(table.rows[r], cols)) continue;
    rows_by_group[it->second].push_back(r);
  }

  GroupMeans out;
  out.indicators.assign(indicators.begin(), indicators.end());
  for (const auto& [group, rows] : rows_by_group) {
    out.groups.push_back(group);
    out.group_sizes.push_back(rows.size());
  }
  out.means.assign(cols.size(), std::vector<double>(out.groups.size(), 0.0));
  out.coverage.assign(cols.size(), std::vector<std::size_t>(out.groups.size(), 0));

  for (std::size_t i = 0; i < cols.size(); ++i) {
    std::size_t g = 0;
    for (const auto& [group, rows] : rows_by_group) {
      double sum = 0.0;
      std::size_t used = 0;
      for (std::size_t r : rows) {
        if (const auto& v = table.rows[r][cols[i]]) {
          sum += *v;
          ++used;
        }
      }
      if (used == 0) {
        throw DomainError(fmt::format("empty group: no '{}' values in quality group {}",
                                      indicators[i], group));
      }
      out.means[i][g] = sum / static_cast<double>(used);
      out.coverage[i][g] = used;
      ++g;
    }
  }
  return out;
}

GrowthRates growth_rates(std::span<const double> means) {
  if (means.size() < 2) throw DomainError("growth rates need at least two group means");
  GrowthRates out;
  for (std::size_t j = 1; j < means.size(); ++j) {
    if (means[j - 1] == 0.0) {
      throw DomainError(fmt::format("undefined growth: mean of group {} is zero", j));
    }
    const double g = 100.0 * (means[j] / means[j - 1] - 1.0);
    out.rates.push_back(g);
    out.sagr += g;
  }
  out.aagr = out.sagr / static_cast<double>(means.size() - 1);
  return out;
}

GrowthReport rank_indicators(std::vector<IndicatorGrowth> indicators) {
  std::sort(indicators.begin(), indicators.end(), [](const auto& a, const auto& b) {
    if (a.growth.sagr != b.growth.sagr) return a.growth.sagr > b.growth.sagr;
    return a.indicator < b.indicator;
  });
  GrowthReport report;
  for (std::size_t i = 0; i < indicators.size(); ++i) {
    GrowthRow row;
    row.indicator = std::move(indicators[i].indicator);
    row.means = std::move(indicators[i].means);
    row.growth = std::move(indicators[i].growth);
    row.rank = static_cast<int>(i) + 1;
    if (i > 0) row.diff_to_previous = row.growth.sagr - report.rows.back().growth.sagr;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const auto n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    const double rank = static_cast<double>(start + end + 1) / 2.0;
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = rank;
    start = end;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("correlation inputs differ in length");
  if (x.size() < 2) throw DomainError("correlation needs at least two observations");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DomainError("correlation undefined for a constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("correlation inputs differ in length");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

CorrelationMatrix correlation_matrix(const IndicatorTable& table,
                                     std::span<const std::string> indicators,
                                     MissingPolicy policy) {
  const auto cols = resolve_columns(table, indicators);
  const auto k = cols.size();
  CorrelationMatrix out;
  out.indicators.assign(indicators.begin(), indicators.end());
  out.values.assign(k, std::vector<std::optional<double>>(k));
  out.observations.assign(k, std::vector<std::size_t>(k, 0));

  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (policy == MissingPolicy::per_indicator || complete(table.rows[r], cols)) rows.push_back(r);
  }

  std::vector<double> x, y;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      x.clear();
      y.clear();
      for (std::size_t r : rows) {
        const auto& a = table.rows[r][cols[i]];
        const auto& b = table.rows[r][cols[j]];
        if (a && b) {
          x.push_back(*a);
          y.push_back(*b);
        }
      }
      std::optional<double> rho;
      try {
        rho = spearman(x, y);
      } catch (const DomainError&) {
      }
      out.values[i][j] = out.values[j][i] = rho;
      out.observations[i][j] = out.observations[j][i] = x.size();
    }
  }
  return out;
}

double normalized_slope(std::span<const double> means) {
  if (means.size() < 2) throw DomainError("slope needs at least two group means");
  if (means.front() == 0.0) throw DomainError("slope undefined: first group mean is zero");
  const auto k = static_cast<double>(means.size());
  const double mean_x = (k + 1.0) / 2.0;
  double mean_y = 0.0;
  for (double m : means) mean_y += m / means.front();
  mean_y /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t j = 0; j < means.size(); ++j) {
    const double dx = static_cast<double>(j + 1) - mean_x;
    sxy += dx * (means[j] / means.front() - mean_y);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ValidityReport analyze_validity(const IndicatorTable& table, const QualityGroups& groups,
                                std::span<const std::string> indicators, MissingPolicy policy) {
  ValidityReport report;
  report.groups = groups;
  report.means = group_means(table, groups, indicators, policy);

  std::vector<IndicatorGrowth> growth;
  for (std::size_t i = 0; i < indicators.size(); ++i) {
    const auto& means = report.means.means[i];
    try {
      growth.push_back({indicators[i], means, growth_rates(means)});
      report.slopes[indicators[i]] = normalized_slope(means);
    } catch (const DomainError& e) {
      report.undefined_growth.emplace_back(indicators[i], e.what());
    }
  }
  report.growth = rank_indicators(std::move(growth));

  // Correlations use the grouped papers only.
  IndicatorTable grouped;
  grouped.columns = table.columns;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (!groups.assignment.contains(table.paper_ids[r])) continue;
    grouped.paper_ids.push_back(table.paper_ids[r]);
    grouped.rows.push_back(table.rows[r]);
  }
  report.correlations = correlation_matrix(grouped, indicators, policy);
  return report;
}

}  // namespace citind
