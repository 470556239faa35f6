#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "citind/corpus.hpp"
#include "citind/indicator_table.hpp"
#include "citind/validity.hpp"

namespace citind {

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(std::string_view name);

struct FormatOptions {
  /// Significant digits for reals; 0 writes the shortest exact representation.
  int precision = 6;
};

std::string format_real(double value, int precision);

/// CSV: header `paper_id,<columns>`, one line per row, empty cell for missing.
/// JSON: {"columns": [...], "rows": [{"paper_id": ..., <column>: value}]}, missing keys absent.
void emit_table(const IndicatorTable& table, OutputFormat format, std::ostream& out,
                const FormatOptions& options = {});

IndicatorTable read_table_json(std::istream& in);
IndicatorTable read_table_csv(std::istream& in);

void emit_validation(const ValidationReport& report, OutputFormat format, std::ostream& out);

/// Growth table CSV: indicator, means per group, AAGR, SAGR, rank, diff_to_previous.
void emit_growth_csv(const GrowthReport& report, std::ostream& out, const FormatOptions& options = {});
/// Table-5 shaped CSV: indicator, one mean column per group.
void emit_means_csv(const GroupMeans& means, std::ostream& out, const FormatOptions& options = {});
/// Table-4 shaped CSV: lower-triangular Spearman matrix.
void emit_correlations_csv(const CorrelationMatrix& matrix, std::ostream& out,
                           const FormatOptions& options = {});

/// JSON: one object per section (groups, means, growth, correlations, slopes).
/// CSV: the growth table.
void emit_validity(const ValidityReport& report, OutputFormat format, std::ostream& out,
                   const FormatOptions& options = {});

/// Writes through a temporary sibling file and renames it into place, so a
/// failed run never leaves a partial output. Throws Error when unwritable.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer);

}  // namespace citind
