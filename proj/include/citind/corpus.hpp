#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace citind {

enum class DocType { article, review, other };

std::string_view to_string(DocType type);
/// Accepts "article", "review", anything else maps to `other`. Case-insensitive.
DocType parse_doc_type(std::string_view text);

/// Maximum number of subject categories one paper may carry.
inline constexpr std::size_t kMaxCategories = 6;

/// Dense position of a paper inside a Corpus. Papers are stored sorted by id,
/// so index order equals paper_id order.
using PaperIndex = std::size_t;

struct Paper {
  std::string id;
  std::optional<std::string> doi;
  int pub_year = 0;
  DocType doc_type = DocType::article;
  std::string journal_id;
  std::vector<std::string> categories;  // sorted, unique, 1..6 entries
  std::optional<std::int64_t> n_refs_listed;
  std::optional<std::int64_t> quality_score;
};

/// Lowercases, trims and strips resolver prefixes ("https://doi.org/", "doi:").
/// Returns nullopt for an empty result.
std::optional<std::string> normalize_doi(std::string_view raw);

enum class InputFormat { csv, jsonl };

/// Picks jsonl for ".jsonl"/".ndjson"/".json" extensions, csv otherwise.
InputFormat detect_format(const std::filesystem::path& path);

/// Maps canonical column names (paper_id, doi, ...) to the names used in a file.
/// Unmapped columns are looked up under their canonical name.
struct ColumnMapping {
  std::map<std::string, std::string> renames;

  std::string column(const std::string& canonical) const;
};

struct PaperLoadOptions {
  int census_year = 0;
  std::optional<int> min_year;
  std::optional<int> max_year;  // defaults to census_year
  InputFormat format = InputFormat::csv;
  ColumnMapping columns;
  /// Throw on the first bad row. When false, bad rows are rejected and recorded.
  bool strict = true;
};

struct CitationLoadOptions {
  InputFormat format = InputFormat::csv;
  ColumnMapping columns;
  bool drop_self_citations = false;
  bool strict = true;
};

struct RowDiagnostic {
  std::size_t line = 0;
  std::string message;
};

struct LoadStats {
  std::size_t paper_rows = 0;
  std::size_t papers_accepted = 0;
  std::size_t papers_rejected = 0;

  std::size_t citation_rows = 0;
  std::size_t edges_accepted = 0;
  std::size_t duplicate_rows = 0;
  std::size_t unknown_citing_rejected = 0;
  std::size_t unlinked_references = 0;  // unique (citing, unknown cited) pairs
  std::size_t self_citations_dropped = 0;

  std::vector<RowDiagnostic> diagnostics;
};

/// Immutable publication corpus with its citation graph.
class Corpus {
 public:
  Corpus() = default;

  int census_year() const noexcept { return census_year_; }
  std::size_t size() const noexcept { return papers_.size(); }
  std::span<const Paper> papers() const noexcept { return papers_; }
  const Paper& paper(PaperIndex i) const { return papers_.at(i); }

  std::optional<PaperIndex> find(std::string_view id) const;
  /// Throws InputError when the id is unknown.
  PaperIndex index_of(std::string_view id) const;

  /// Papers citing `cited`, ascending index order.
  std::span<const PaperIndex> citing_papers(PaperIndex cited) const;
  /// Corpus papers referenced by `citing` (linked references), ascending.
  std::span<const PaperIndex> linked_references(PaperIndex citing) const;
  std::int64_t unlinked_references(PaperIndex citing) const;
  /// n_refs_listed column value, else the paper's number of reference rows.
  std::int64_t listed_references(PaperIndex citing) const;

  std::size_t edge_count() const noexcept { return edge_count_; }
  bool has_citations() const noexcept { return citations_loaded_; }
  const LoadStats& load_stats() const noexcept { return stats_; }

  /// Papers sharing (journal_id, pub_year) with `i`, ascending, including `i`.
  std::span<const PaperIndex> journal_year_peers(PaperIndex i) const;

 private:
  friend Corpus load_papers(std::istream&, const PaperLoadOptions&);
  friend Corpus load_citations(std::istream&, const Corpus&, const CitationLoadOptions&);

  void index_journal_years();

  int census_year_ = 0;
  std::vector<Paper> papers_;
  std::unordered_map<std::string, PaperIndex> by_id_;

  bool citations_loaded_ = false;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<PaperIndex>> citing_;
  std::vector<std::vector<PaperIndex>> references_;
  std::vector<std::int64_t> unlinked_;
  std::vector<std::int64_t> reference_rows_;

  std::vector<std::size_t> journal_year_group_;
  std::vector<std::vector<PaperIndex>> journal_year_members_;

  LoadStats stats_;
};

Corpus load_papers(std::istream& source, const PaperLoadOptions& options);
Corpus load_papers(const std::filesystem::path& path, PaperLoadOptions options);

/// Returns a new corpus carrying the citation graph read from `source`.
Corpus load_citations(std::istream& source, const Corpus& papers, const CitationLoadOptions& options);
Corpus load_citations(const std::filesystem::path& path, const Corpus& papers,
                      CitationLoadOptions options);

struct ValidationReport {
  std::size_t papers = 0;
  std::map<int, std::size_t> papers_per_year;
  std::map<std::string, std::size_t> papers_per_doc_type;
  std::size_t linked_references = 0;
  std::size_t unlinked_references = 0;
  double unlinked_rate = 0.0;
  std::size_t missing_quality_scores = 0;
  LoadStats load;
};

ValidationReport validate_corpus(const Corpus& corpus);

}  // namespace citind
