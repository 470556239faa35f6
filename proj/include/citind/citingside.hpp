#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>

#include "citind/corpus.hpp"
#include "citind/refsets.hpp"

namespace citind {

/// Publication years of references considered for a citation made in
/// `citing_year`: the `years` most recent years up to and including it.
YearRange reference_year_range(int citing_year, int years);

/// Citation potential of one citing paper.
struct CitingContext {
  PaperIndex citing = 0;
  std::int64_t linked_refs = 0;       // r: linked references with pub_year in range
  double journal_mean_refs = 0.0;     // a: mean r over the citing paper's journal-year
  double journal_share_linked = 0.0;  // p: share of that journal-year with r >= 1
};

std::int64_t linked_references_in_range(const Corpus& corpus, PaperIndex citing, YearRange range);
CitingContext citing_context(const Corpus& corpus, PaperIndex citing, YearRange range);

struct SncsScores {
  double sncs1 = 0.0;
  double sncs2 = 0.0;
  double sncs3 = 0.0;
  std::size_t citations = 0;  // windowed citations considered
  std::size_t skipped1 = 0;   // citations with a = 0
  std::size_t skipped2 = 0;   // citations with r = 0
  std::size_t skipped3 = 0;   // citations with p * r = 0
};

/// Source-normalized citation scores. Journal-year contexts are memoized, so an
/// instance must not be shared between threads.
class SourceNormalizer {
 public:
  /// `reference_years` overrides the citing-side window length, which otherwise
  /// equals the focal paper's citation window length.
  SourceNormalizer(const Corpus& corpus, CitationWindow window,
                   std::optional<int> reference_years = std::nullopt);

  SncsScores score(PaperIndex paper);
  CitingContext context(PaperIndex citing, YearRange range);

 private:
  struct JournalYearStats {
    double mean_refs = 0.0;
    double share_linked = 0.0;
  };

  const Corpus* corpus_;
  CitationWindow window_;
  std::optional<int> reference_years_;
  std::map<std::tuple<PaperIndex, int, int>, JournalYearStats> cache_;
};

double sncs1(const Corpus& corpus, PaperIndex paper, const CitationWindow& window);
double sncs2(const Corpus& corpus, PaperIndex paper, const CitationWindow& window);
double sncs3(const Corpus& corpus, PaperIndex paper, const CitationWindow& window);

}  // namespace citind
