#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citind/corpus.hpp"

namespace citind {

/// Inclusive calendar-year interval.
struct YearRange {
  int first = 0;
  int last = 0;

  bool contains(int year) const noexcept { return year >= first && year <= last; }
  friend bool operator==(const YearRange&, const YearRange&) = default;
};

/// Citation counting window. A fixed window of w years for a paper published
/// in year y counts citations from years [y, y + w - 1]; the open window counts
/// up to the census year.
class CitationWindow {
 public:
  static CitationWindow fixed(int years);
  static CitationWindow open() { return CitationWindow(0); }

  bool is_open() const noexcept { return years_ == 0; }
  /// Window length; only meaningful for fixed windows.
  int years() const noexcept { return years_; }

  YearRange counting_years(int pub_year, int census_year) const;
  /// Length of the counting range, census-capped for open windows.
  int length(int pub_year, int census_year) const;
  bool is_mature(int pub_year, int census_year) const;

  std::string describe() const;
  friend bool operator==(const CitationWindow&, const CitationWindow&) = default;

 private:
  explicit CitationWindow(int years) : years_(years) {}
  int years_;
};

bool is_mature(const Corpus& corpus, PaperIndex paper, const CitationWindow& window);

/// Citations received inside the window. Throws ImmatureWindowError when a fixed
/// window ends after the census year.
std::int64_t citation_count(const Corpus& corpus, PaperIndex paper, const CitationWindow& window);

/// Papers appearing next to `paper` in at least one citing paper's reference list.
std::vector<PaperIndex> cocited_set(const Corpus& corpus, PaperIndex paper);

enum class ReferenceBasis { all_listed, linked_only };

struct ReferenceSetKey {
  std::string category;
  int year = 0;
  std::optional<DocType> doc_type;

  friend auto operator<=>(const ReferenceSetKey&, const ReferenceSetKey&) = default;
  friend bool operator==(const ReferenceSetKey&, const ReferenceSetKey&) = default;
};

std::string to_string(const ReferenceSetKey& key);

struct ReferenceSet {
  ReferenceSetKey key;
  std::vector<PaperIndex> members;           // ascending (= paper_id order)
  std::vector<std::int64_t> citation_counts;  // parallel to members
  double mean_citations = 0.0;
  double mean_refs = 0.0;

  std::int64_t count_of(PaperIndex paper) const;
};

struct RefSetOptions {
  CitationWindow window = CitationWindow::open();
  bool partition_by_doc_type = false;
  std::vector<DocType> doc_types{DocType::article, DocType::review};
  ReferenceBasis reference_basis = ReferenceBasis::all_listed;
};

/// All reference sets of a corpus plus the paper -> sets index.
class ReferenceSets {
 public:
  static ReferenceSets build(const Corpus& corpus, const RefSetOptions& options);

  const RefSetOptions& options() const noexcept { return options_; }
  std::span<const ReferenceSet> sets() const noexcept { return sets_; }
  const ReferenceSet& set(std::size_t id) const { return sets_.at(id); }
  /// Indices into sets() of every set containing `paper`; empty if ineligible.
  std::span<const std::size_t> sets_of(PaperIndex paper) const;
  const ReferenceSet* find(const ReferenceSetKey& key) const;

  /// Papers left out because their doc type is excluded or the window is immature.
  std::span<const PaperIndex> excluded() const noexcept { return excluded_; }

 private:
  RefSetOptions options_;
  std::vector<ReferenceSet> sets_;  // sorted by key
  std::vector<std::vector<std::size_t>> membership_;
  std::vector<PaperIndex> excluded_;
};

/// Number of cited references of `paper` under the chosen basis.
std::int64_t reference_count(const Corpus& corpus, PaperIndex paper, ReferenceBasis basis);

}  // namespace citind
