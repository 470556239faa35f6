#include "citind/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <utility>

#include "citind/error.hpp"
#include "tabular.hpp"

namespace citind {

namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::int64_t parse_integer(const std::string& text, const char* column, std::size_t line) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InputError(std::string("column ") + column + ": not an integer: '" + text + "'", line);
  }
  return value;
}

std::vector<std::string> split_categories(const std::string& text) {
  std::set<std::string> unique;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto bar = text.find('|', start);
    if (bar == std::string::npos) bar = text.size();
    auto token = detail::trim(std::string_view(text).substr(start, bar - start));
    if (!token.empty()) unique.insert(std::move(token));
    start = bar + 1;
  }
  return {unique.begin(), unique.end()};
}

// Rethrows in strict mode; otherwise records the failure and reports rejection.
template <typename Fn>
bool guarded(bool strict, std::vector<RowDiagnostic>& diagnostics, std::size_t line, Fn&& fn) {
  try {
    fn();
    return true;
  } catch (const InputError& e) {
    if (strict) throw;
    diagnostics.push_back({line, e.what()});
    return false;
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::article:
      return "article";
    case DocType::review:
      return "review";
    case DocType::other:
      break;
  }
  return "other";
}

DocType parse_doc_type(std::string_view text) {
  const auto lower = lowercase(detail::trim(text));
  if (lower == "article") return DocType::article;
  if (lower == "review") return DocType::review;
  return DocType::other;
}

std::optional<std::string> normalize_doi(std::string_view raw) {
  std::string doi = lowercase(detail::trim(raw));
  for (std::string_view prefix : {"https://doi.org/", "http://doi.org/", "https://dx.doi.org/",
                                  "http://dx.doi.org/", "doi.org/", "doi:"}) {
    if (doi.starts_with(prefix)) {
      doi.erase(0, prefix.size());
      break;
    }
  }
  doi = detail::trim(doi);
  if (doi.empty()) return std::nullopt;
  return doi;
}

InputFormat detect_format(const std::filesystem::path& path) {
  const auto ext = lowercase(path.extension().string());
  if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") return InputFormat::jsonl;
  return InputFormat::csv;
}

std::string ColumnMapping::column(const std::string& canonical) const {
  auto it = renames.find(canonical);
  return it == renames.end() ? canonical : it->second;
}

std::optional<PaperIndex> Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

PaperIndex Corpus::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw InputError("unknown paper id '" + std::string(id) + "'");
}

std::span<const PaperIndex> Corpus::citing_papers(PaperIndex cited) const {
  if (!citations_loaded_) return {};
  return citing_.at(cited);
}

std::span<const PaperIndex> Corpus::linked_references(PaperIndex citing) const {
  if (!citations_loaded_) return {};
  return references_.at(citing);
}

std::int64_t Corpus::unlinked_references(PaperIndex citing) const {
  if (!citations_loaded_) return 0;
  return unlinked_.at(citing);
}

std::int64_t Corpus::listed_references(PaperIndex citing) const {
  const auto& p = papers_.at(citing);
  if (p.n_refs_listed) return *p.n_refs_listed;
  if (!citations_loaded_) return 0;
  return reference_rows_.at(citing);
}

std::span<const PaperIndex> Corpus::journal_year_peers(PaperIndex i) const {
  return journal_year_members_.at(journal_year_group_.at(i));
}

void Corpus::index_journal_years() {
  std::map<std::pair<std::string, int>, std::size_t> groups;
  journal_year_group_.assign(papers_.size(), 0);
  journal_year_members_.clear();
  for (PaperIndex i = 0; i < papers_.size(); ++i) {
    auto key = std::make_pair(papers_[i].journal_id, papers_[i].pub_year);
    auto [it, inserted] = groups.emplace(std::move(key), journal_year_members_.size());
    if (inserted) journal_year_members_.emplace_back();
    journal_year_group_[i] = it->second;
    journal_year_members_[it->second].push_back(i);
  }
}

Corpus load_papers(std::istream& source, const PaperLoadOptions& options) {
  const int max_year = options.max_year.value_or(options.census_year);
  const auto& cols = options.columns;
  const auto c_id = cols.column("paper_id");
  const auto c_doi = cols.column("doi");
  const auto c_year = cols.column("pub_year");
  const auto c_type = cols.column("doc_type");
  const auto c_journal = cols.column("journal_id");
  const auto c_categories = cols.column("categories");
  const auto c_nrefs = cols.column("n_refs_listed");
  const auto c_quality = cols.column("quality_score");

  Corpus corpus;
  corpus.census_year_ = options.census_year;
  auto& stats = corpus.stats_;
  std::set<std::string> seen;

  detail::read_rows(source, options.format, [&](const detail::TabularRow& row) {
    ++stats.paper_rows;
    Paper paper;
    const bool ok = guarded(options.strict, stats.diagnostics, row.line, [&] {
      if (row.defect) throw InputError(*row.defect, row.line);
      auto id = row.get(c_id);
      if (!id) throw InputError("missing paper_id", row.line);
      paper.id = *id;
      if (auto doi = row.get(c_doi)) paper.doi = normalize_doi(*doi);

      auto year = row.get(c_year);
      if (!year) throw InputError("missing pub_year", row.line);
      paper.pub_year = static_cast<int>(parse_integer(*year, "pub_year", row.line));
      if (paper.pub_year > max_year || (options.min_year && paper.pub_year < *options.min_year)) {
        throw InputError("pub_year " + *year + " outside configured range", row.line);
      }

      if (auto type = row.get(c_type)) paper.doc_type = parse_doc_type(*type);
      if (auto journal = row.get(c_journal)) paper.journal_id = *journal;
      else throw InputError("missing journal_id", row.line);

      paper.categories = split_categories(row.get(c_categories).value_or(""));
      if (paper.categories.empty()) throw InputError("empty category set", row.line);
      if (paper.categories.size() > kMaxCategories) {
        throw InputError("too many categories (" + std::to_string(paper.categories.size()) +
                             ", at most " + std::to_string(kMaxCategories) + ")",
                         row.line);
      }

      if (auto refs = row.get(c_nrefs)) {
        paper.n_refs_listed = parse_integer(*refs, "n_refs_listed", row.line);
        if (*paper.n_refs_listed < 0) throw InputError("negative n_refs_listed", row.line);
      }
      if (auto score = row.get(c_quality)) {
        paper.quality_score = parse_integer(*score, "quality_score", row.line);
        if (*paper.quality_score < 0) throw InputError("negative quality_score", row.line);
      }
      if (!seen.insert(paper.id).second) {
        throw InputError("duplicate paper_id '" + paper.id + "'", row.line);
      }
    });
    if (ok) {
      corpus.papers_.push_back(std::move(paper));
      ++stats.papers_accepted;
    } else {
      ++stats.papers_rejected;
    }
  });

  std::sort(corpus.papers_.begin(), corpus.papers_.end(),
            [](const Paper& a, const Paper& b) { return a.id < b.id; });
  for (PaperIndex i = 0; i < corpus.papers_.size(); ++i) corpus.by_id_[corpus.papers_[i].id] = i;
  corpus.index_journal_years();
  return corpus;
}

Corpus load_papers(const std::filesystem::path& path, PaperLoadOptions options) {
  auto in = open_input(path);
  options.format = detect_format(path);
  return load_papers(in, options);
}

Corpus load_citations(std::istream& source, const Corpus& papers,
                      const CitationLoadOptions& options) {
  Corpus corpus = papers;
  const std::size_t n = corpus.papers_.size();
  corpus.citations_loaded_ = true;
  corpus.citing_.assign(n, {});
  corpus.references_.assign(n, {});
  corpus.unlinked_.assign(n, 0);
  corpus.reference_rows_.assign(n, 0);
  corpus.edge_count_ = 0;

  auto& stats = corpus.stats_;
  stats.citation_rows = 0;
  stats.edges_accepted = 0;
  stats.duplicate_rows = 0;
  stats.unknown_citing_rejected = 0;
  stats.unlinked_references = 0;
  stats.self_citations_dropped = 0;

  const auto c_citing = options.columns.column("citing_id");
  const auto c_cited = options.columns.column("cited_id");
  std::set<std::pair<PaperIndex, std::string>> seen;

  detail::read_rows(source, options.format, [&](const detail::TabularRow& row) {
    ++stats.citation_rows;
    guarded(options.strict, stats.diagnostics, row.line, [&] {
      if (row.defect) throw InputError(*row.defect, row.line);
      auto citing_id = row.get(c_citing);
      auto cited_id = row.get(c_cited);
      if (!citing_id || !cited_id) throw InputError("missing citing_id or cited_id", row.line);

      auto citing = corpus.find(*citing_id);
      if (!citing) {
        ++stats.unknown_citing_rejected;
        stats.diagnostics.push_back({row.line, "citing paper '" + *citing_id + "' not in corpus"});
        return;
      }
      if (!seen.emplace(*citing, *cited_id).second) {
        ++stats.duplicate_rows;
        stats.diagnostics.push_back(
            {row.line, "duplicate citation " + *citing_id + " -> " + *cited_id + " ignored"});
        return;
      }
      ++corpus.reference_rows_[*citing];

      auto cited = corpus.find(*cited_id);
      if (!cited) {
        ++corpus.unlinked_[*citing];
        ++stats.unlinked_references;
        return;
      }
      if (*cited == *citing && options.drop_self_citations) {
        ++stats.self_citations_dropped;
        return;
      }
      corpus.references_[*citing].push_back(*cited);
      corpus.citing_[*cited].push_back(*citing);
      ++corpus.edge_count_;
      ++stats.edges_accepted;
    });
  });

  for (auto& list : corpus.citing_) std::sort(list.begin(), list.end());
  for (auto& list : corpus.references_) std::sort(list.begin(), list.end());
  return corpus;
}

Corpus load_citations(const std::filesystem::path& path, const Corpus& papers,
                      CitationLoadOptions options) {
  auto in = open_input(path);
  options.format = detect_format(path);
  return load_citations(in, papers, options);
}

ValidationReport validate_corpus(const Corpus& corpus) {
  ValidationReport report;
  report.papers = corpus.size();
  for (const auto& p : corpus.papers()) {
    ++report.papers_per_year[p.pub_year];
    ++report.papers_per_doc_type[std::string(to_string(p.doc_type))];
    if (!p.quality_score) ++report.missing_quality_scores;
  }
  report.linked_references = corpus.edge_count();
  report.unlinked_references = corpus.load_stats().unlinked_references;
  const auto total = report.linked_references + report.unlinked_references;
  report.unlinked_rate = total == 0 ? 0.0 : static_cast<double>(report.unlinked_references) /
                                                static_cast<double>(total);
  report.load = corpus.load_stats();
  return report;
}

}  // namespace citind
