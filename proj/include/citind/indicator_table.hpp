#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace citind {

/// Per-paper indicator values. Rows are ordered by paper id; a missing value is
/// nullopt and is never treated as zero.
struct IndicatorTable {
  std::vector<std::string> columns;
  std::vector<std::string> paper_ids;
  std::vector<std::vector<std::optional<double>>> rows;  // rows[i][column]

  std::size_t column_index(std::string_view name) const;  // throws ConfigError
  std::optional<std::size_t> find_column(std::string_view name) const;
  /// Values of one column, parallel to paper_ids.
  std::vector<std::optional<double>> column(std::string_view name) const;
  void add_column(std::string name, const std::vector<std::optional<double>>& values);
};

}  // namespace citind
