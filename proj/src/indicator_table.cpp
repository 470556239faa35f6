#include "citind/indicator_table.hpp"

#include <algorithm>
#include "citind/error.hpp"

namespace citind {

std::optional<std::size_t> IndicatorTable::find_column(std::string_view name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns.begin());
}

std::size_t IndicatorTable::column_index(std::string_view name) const {
  if (auto i = find_column(name)) return *i;
  throw ConfigError("no indicator column '" + std::string(name) + "'");
}

std::vector<std::optional<double>> IndicatorTable::column(std::string_view name) const {
  const auto c = column_index(name);
  std::vector<std::optional<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

void IndicatorTable::add_column(std::string name, const std::vector<std::optional<double>>& values) {
  if (values.size() != rows.size()) throw std::invalid_argument("column length mismatch");
  if (find_column(name)) throw std::invalid_argument("duplicate column '" + name + "'");
  columns.push_back(std::move(name));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(values[i]);
}

}  // namespace citind
