#include "citind/report.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "citind/error.hpp"
#include "tabular.hpp"

namespace citind {

namespace {

using nlohmann::json;

std::string csv_escape(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell(const std::optional<double>& value, int precision) {
  if (!value || !std::isfinite(*value)) return {};
  return format_real(*value, precision);
}

json number(double value, int precision) {
  if (!std::isfinite(value)) return nullptr;
  if (precision == 0) return value;
  return std::stod(format_real(value, precision));
}

std::string group_label(int group) { return fmt::format("group_{}", group); }

json groups_json(const QualityGroups& groups) {
  json j;
  j["thresholds"] = groups.thresholds.bounds;
  j["max_classes"] = groups.thresholds.max_classes;
  json sizes = json::object();
  for (const auto& [group, n] : groups.sizes()) sizes[group_label(group)] = n;
  j["sizes"] = sizes;
  return j;
}

json means_json(const GroupMeans& means, int precision) {
  json j;
  j["groups"] = means.groups;
  j["group_sizes"] = means.group_sizes;
  j["indicators"] = json::array();
  for (std::size_t i = 0; i < means.indicators.size(); ++i) {
    json row;
    row["indicator"] = means.indicators[i];
    row["means"] = json::array();
    for (double m : means.means[i]) row["means"].push_back(number(m, precision));
    row["coverage"] = means.coverage[i];
    j["indicators"].push_back(row);
  }
  return j;
}

json growth_json(const GrowthReport& report, int precision) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row;
    row["indicator"] = r.indicator;
    row["rank"] = r.rank;
    row["aagr"] = number(r.growth.aagr, precision);
    row["sagr"] = number(r.growth.sagr, precision);
    row["growth_rates"] = json::array();
    for (double g : r.growth.rates) row["growth_rates"].push_back(number(g, precision));
    if (r.diff_to_previous) row["diff_to_previous"] = number(*r.diff_to_previous, precision);
    rows.push_back(row);
  }
  return rows;
}

json correlations_json(const CorrelationMatrix& m, int precision) {
  json j;
  j["indicators"] = m.indicators;
  j["spearman"] = json::array();
  for (const auto& row : m.values) {
    json out = json::array();
    for (const auto& v : row) out.push_back(v ? number(*v, precision) : json(nullptr));
    j["spearman"].push_back(out);
  }
  return j;
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError(fmt::format("unknown output format '{}'", name));
}

std::string format_real(double value, int precision) {
  if (value == 0.0) value = 0.0;  // folds -0
  if (precision == 0) return fmt::format("{}", value);
  return fmt::format("{:.{}g}", value, precision);
}

void emit_table(const IndicatorTable& table, OutputFormat format, std::ostream& out,
                const FormatOptions& options) {
  if (format == OutputFormat::csv) {
    out << "paper_id";
    for (const auto& c : table.columns) out << ',' << csv_escape(c);
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      out << csv_escape(table.paper_ids[r]);
      for (const auto& v : table.rows[r]) out << ',' << cell(v, options.precision);
      out << '\n';
    }
    return;
  }
  json j;
  j["columns"] = table.columns;
  j["rows"] = json::array();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    json row;
    row["paper_id"] = table.paper_ids[r];
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const auto& v = table.rows[r][c];
      if (v && std::isfinite(*v)) row[table.columns[c]] = number(*v, options.precision);
    }
    j["rows"].push_back(row);
  }
  out << j.dump(2) << '\n';
}

IndicatorTable read_table_json(std::istream& in) {
  IndicatorTable table;
  json j;
  try {
    j = json::parse(in);
    table.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) {
      table.paper_ids.push_back(row.at("paper_id").get<std::string>());
      std::vector<std::optional<double>> values;
      for (const auto& c : table.columns) {
        if (row.contains(c) && row[c].is_number()) values.push_back(row[c].get<double>());
        else values.push_back(std::nullopt);
      }
      table.rows.push_back(std::move(values));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed indicator table: ") + e.what());
  }
  return table;
}

IndicatorTable read_table_csv(std::istream& in) {
  IndicatorTable table;
  bool header_seen = false;
  detail::read_rows(in, InputFormat::csv, [&](const detail::TabularRow& row) {
    if (row.defect) throw InputError(*row.defect, row.line);
    if (!header_seen) {
      for (const auto& [name, value] : row.cells) {
        if (name != "paper_id") table.columns.push_back(name);
      }
      header_seen = true;
    }
    auto id = row.get("paper_id");
    if (!id) throw InputError("missing paper_id", row.line);
    table.paper_ids.push_back(*id);
    std::vector<std::optional<double>> values;
    for (const auto& c : table.columns) {
      auto text = row.get(c);
      if (!text) {
        values.push_back(std::nullopt);
        continue;
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(*text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != text->size()) throw InputError("column " + c + ": not a number", row.line);
      values.push_back(v);
    }
    table.rows.push_back(std::move(values));
  });
  return table;
}

void emit_validation(const ValidationReport& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    out << "metric,key,value\n";
    out << "papers,," << report.papers << '\n';
    for (const auto& [year, n] : report.papers_per_year) out << "papers_per_year," << year << ',' << n << '\n';
    for (const auto& [type, n] : report.papers_per_doc_type) {
      out << "papers_per_doc_type," << type << ',' << n << '\n';
    }
    out << "linked_references,," << report.linked_references << '\n';
    out << "unlinked_references,," << report.unlinked_references << '\n';
    out << "unlinked_rate,," << format_real(report.unlinked_rate, 6) << '\n';
    out << "missing_quality_scores,," << report.missing_quality_scores << '\n';
    out << "paper_rows,," << report.load.paper_rows << '\n';
    out << "papers_rejected,," << report.load.papers_rejected << '\n';
    out << "citation_rows,," << report.load.citation_rows << '\n';
    out << "duplicate_citation_rows,," << report.load.duplicate_rows << '\n';
    out << "unknown_citing_rejected,," << report.load.unknown_citing_rejected << '\n';
    out << "self_citations_dropped,," << report.load.self_citations_dropped << '\n';
    return;
  }
  json j;
  j["papers"] = report.papers;
  json years = json::object();
  for (const auto& [year, n] : report.papers_per_year) years[std::to_string(year)] = n;
  j["papers_per_year"] = years;
  j["papers_per_doc_type"] = report.papers_per_doc_type;
  j["linked_references"] = report.linked_references;
  j["unlinked_references"] = report.unlinked_references;
  j["unlinked_rate"] = report.unlinked_rate;
  j["missing_quality_scores"] = report.missing_quality_scores;
  j["load"] = {{"paper_rows", report.load.paper_rows},
               {"papers_accepted", report.load.papers_accepted},
               {"papers_rejected", report.load.papers_rejected},
               {"citation_rows", report.load.citation_rows},
               {"edges_accepted", report.load.edges_accepted},
               {"duplicate_rows", report.load.duplicate_rows},
               {"unknown_citing_rejected", report.load.unknown_citing_rejected},
               {"self_citations_dropped", report.load.self_citations_dropped}};
  out << j.dump(2) << '\n';
}

void emit_growth_csv(const GrowthReport& report, std::ostream& out, const FormatOptions& options) {
  std::size_t groups = 0;
  for (const auto& r : report.rows) groups = std::max(groups, r.means.size());
  out << "indicator";
  for (std::size_t g = 1; g <= groups; ++g) out << ",mean_" << g;
  out << ",AAGR,SAGR,rank,diff_to_previous\n";
  for (const auto& r : report.rows) {
    out << csv_escape(r.indicator);
    for (std::size_t g = 0; g < groups; ++g) {
      out << ',' << (g < r.means.size() ? format_real(r.means[g], options.precision) : "");
    }
    out << ',' << format_real(r.growth.aagr, options.precision) << ','
        << format_real(r.growth.sagr, options.precision) << ',' << r.rank << ','
        << cell(r.diff_to_previous, options.precision) << '\n';
  }
}

void emit_means_csv(const GroupMeans& means, std::ostream& out, const FormatOptions& options) {
  out << "indicator";
  for (std::size_t g = 0; g < means.groups.size(); ++g) {
    out << ',' << group_label(means.groups[g]) << " (n=" << means.group_sizes[g] << ')';
  }
  out << '\n';
  for (std::size_t i = 0; i < means.indicators.size(); ++i) {
    out << csv_escape(means.indicators[i]);
    for (double m : means.means[i]) out << ',' << format_real(m, options.precision);
    out << '\n';
  }
}

void emit_correlations_csv(const CorrelationMatrix& matrix, std::ostream& out,
                           const FormatOptions& options) {
  out << "indicator";
  for (const auto& name : matrix.indicators) out << ',' << csv_escape(name);
  out << '\n';
  for (std::size_t i = 0; i < matrix.indicators.size(); ++i) {
    out << csv_escape(matrix.indicators[i]);
    for (std::size_t j = 0; j < matrix.indicators.size(); ++j) {
      out << ',';
      if (j <= i) out << cell(matrix.values[i][j], options.precision);
    }
    out << '\n';
  }
}

void emit_validity(const ValidityReport& report, OutputFormat format, std::ostream& out,
                   const FormatOptions& options) {
  if (format == OutputFormat::csv) {
    emit_growth_csv(report.growth, out, options);
    return;
  }
  json j;
  j["groups"] = groups_json(report.groups);
  j["means"] = means_json(report.means, options.precision);
  j["growth"] = growth_json(report.growth, options.precision);
  json undefined = json::array();
  for (const auto& [name, reason] : report.undefined_growth) {
    undefined.push_back({{"indicator", name}, {"reason", reason}});
  }
  j["undefined_growth"] = undefined;
  json slopes = json::object();
  for (const auto& [name, slope] : report.slopes) slopes[name] = number(slope, options.precision);
  j["normalized_slopes"] = slopes;
  j["correlations"] = correlations_json(report.correlations, options.precision);
  out << j.dump(2) << '\n';
}

void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer) {
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    try {
      writer(out);
    } catch (...) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw;
    }
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error("failed writing " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place: " + path.string());
  }
}

}  // namespace citind
