#include "citind/citingside.hpp"

#include <fmt/format.h>

#include "citind/error.hpp"

namespace citind {

YearRange reference_year_range(int citing_year, int years) {
  if (years < 1) throw ConfigError(fmt::format("reference window must be >= 1 year, got {}", years));
  return {citing_year - years + 1, citing_year};
}

std::int64_t linked_references_in_range(const Corpus& corpus, PaperIndex citing, YearRange range) {
  std::int64_t r = 0;
  for (PaperIndex ref : corpus.linked_references(citing)) {
    if (range.contains(corpus.paper(ref).pub_year)) ++r;
  }
  return r;
}

CitingContext citing_context(const Corpus& corpus, PaperIndex citing, YearRange range) {
  CitingContext ctx;
  ctx.citing = citing;
  ctx.linked_refs = linked_references_in_range(corpus, citing, range);
  const auto peers = corpus.journal_year_peers(citing);
  std::int64_t total = 0;
  std::size_t with_refs = 0;
  for (PaperIndex peer : peers) {
    const auto r = peer == citing ? ctx.linked_refs : linked_references_in_range(corpus, peer, range);
    total += r;
    if (r >= 1) ++with_refs;
  }
  const auto n = static_cast<double>(peers.size());
  ctx.journal_mean_refs = static_cast<double>(total) / n;
  ctx.journal_share_linked = static_cast<double>(with_refs) / n;
  return ctx;
}

SourceNormalizer::SourceNormalizer(const Corpus& corpus, CitationWindow window,
                                   std::optional<int> reference_years)
    : corpus_(&corpus), window_(window), reference_years_(reference_years) {
  if (reference_years_ && *reference_years_ < 1) {
    throw ConfigError("reference window must be >= 1 year");
  }
}

CitingContext SourceNormalizer::context(PaperIndex citing, YearRange range) {
  const auto peers = corpus_->journal_year_peers(citing);
  const auto key = std::make_tuple(peers.front(), range.first, range.last);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    const auto full = citing_context(*corpus_, citing, range);
    it = cache_.emplace(key, JournalYearStats{full.journal_mean_refs, full.journal_share_linked}).first;
  }
  CitingContext ctx;
  ctx.citing = citing;
  ctx.linked_refs = linked_references_in_range(*corpus_, citing, range);
  ctx.journal_mean_refs = it->second.mean_refs;
  ctx.journal_share_linked = it->second.share_linked;
  return ctx;
}

SncsScores SourceNormalizer::score(PaperIndex paper) {
  const auto& focal = corpus_->paper(paper);
  const int census = corpus_->census_year();
  if (!window_.is_mature(focal.pub_year, census)) {
    throw ImmatureWindowError(fmt::format("immature paper '{}': {} window from {} ends after census {}",
                                          focal.id, window_.describe(), focal.pub_year, census));
  }
  const auto counting = window_.counting_years(focal.pub_year, census);
  const int ref_years = reference_years_.value_or(window_.length(focal.pub_year, census));

  SncsScores out;
  for (PaperIndex citing : corpus_->citing_papers(paper)) {
    const int year = corpus_->paper(citing).pub_year;
    if (!counting.contains(year)) continue;
    ++out.citations;
    const auto ctx = context(citing, reference_year_range(year, ref_years));
    const auto r = static_cast<double>(ctx.linked_refs);
    if (ctx.journal_mean_refs > 0.0) out.sncs1 += 1.0 / ctx.journal_mean_refs;
    else ++out.skipped1;
    if (r > 0.0) out.sncs2 += 1.0 / r;
    else ++out.skipped2;
    const double pr = ctx.journal_share_linked * r;
    if (pr > 0.0) out.sncs3 += 1.0 / pr;
    else ++out.skipped3;
  }
  return out;
}

double sncs1(const Corpus& corpus, PaperIndex paper, const CitationWindow& window) {
  return SourceNormalizer(corpus, window).score(paper).sncs1;
}

double sncs2(const Corpus& corpus, PaperIndex paper, const CitationWindow& window) {
  return SourceNormalizer(corpus, window).score(paper).sncs2;
}

double sncs3(const Corpus& corpus, PaperIndex paper, const CitationWindow& window) {
  return SourceNormalizer(corpus, window).score(paper).sncs3;
}

}  // namespace citind
