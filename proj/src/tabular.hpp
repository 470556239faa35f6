#pragma once

// Row-oriented reader shared by the paper and citation loaders. CSV rows and
// JSON-lines objects are both flattened to string cells keyed by column name.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "citind/corpus.hpp"

namespace citind::detail {

struct TabularRow {
  std::size_t line = 0;
  std::map<std::string, std::string> cells;
  /// Set when the row could not be split into cells (wrong field count, bad JSON).
  std::optional<std::string> defect;

  /// Empty cells and absent keys both yield nullopt.
  std::optional<std::string> get(const std::string& column) const;
};

/// Splits one CSV record (RFC 4180 quoting). Throws InputError on unbalanced quotes.
std::vector<std::string> split_csv_record(const std::string& record, std::size_t line);

/// Calls `visit` once per data row. Blank lines are skipped.
/// Rows that cannot be split are still visited, with `defect` set. The reader
/// throws only when the stream itself is unreadable (unterminated quote at EOF).
void read_rows(std::istream& in, InputFormat format,
               const std::function<void(const TabularRow&)>& visit);

std::string trim(std::string_view text);

}  // namespace citind::detail
