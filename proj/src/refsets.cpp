#include "citind/refsets.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "citind/error.hpp"

namespace citind {

CitationWindow CitationWindow::fixed(int years) {
  if (years < 1) throw ConfigError(fmt::format("citation window must be >= 1 year, got {}", years));
  return CitationWindow(years);
}

YearRange CitationWindow::counting_years(int pub_year, int census_year) const {
  if (is_open()) return {pub_year, census_year};
  return {pub_year, pub_year + years_ - 1};
}

int CitationWindow::length(int pub_year, int census_year) const {
  const auto range = counting_years(pub_year, census_year);
  return range.last - range.first + 1;
}

bool CitationWindow::is_mature(int pub_year, int census_year) const {
  return counting_years(pub_year, census_year).last <= census_year;
}

std::string CitationWindow::describe() const {
  return is_open() ? std::string("open") : fmt::format("{}y", years_);
}

bool is_mature(const Corpus& corpus, PaperIndex paper, const CitationWindow& window) {
  return window.is_mature(corpus.paper(paper).pub_year, corpus.census_year());
}

std::int64_t citation_count(const Corpus& corpus, PaperIndex paper, const CitationWindow& window) {
  const auto& p = corpus.paper(paper);
  if (!window.is_mature(p.pub_year, corpus.census_year())) {
    throw ImmatureWindowError(fmt::format("immature paper '{}': {} window from {} ends after census {}",
                                          p.id, window.describe(), p.pub_year,
                                          corpus.census_year()));
  }
  const auto range = window.counting_years(p.pub_year, corpus.census_year());
  std::int64_t count = 0;
  for (PaperIndex citing : corpus.citing_papers(paper)) {
    if (range.contains(corpus.paper(citing).pub_year)) ++count;
  }
  return count;
}

std::vector<PaperIndex> cocited_set(const Corpus& corpus, PaperIndex paper) {
  std::vector<PaperIndex> out;
  for (PaperIndex citing : corpus.citing_papers(paper)) {
    for (PaperIndex other : corpus.linked_references(citing)) {
      if (other != paper) out.push_back(other);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(const ReferenceSetKey& key) {
  if (key.doc_type) return fmt::format("{}/{}/{}", key.category, key.year, to_string(*key.doc_type));
  return fmt::format("{}/{}", key.category, key.year);
}

std::int64_t ReferenceSet::count_of(PaperIndex paper) const {
  auto it = std::lower_bound(members.begin(), members.end(), paper);
  if (it == members.end() || *it != paper) {
    throw DomainError(fmt::format("paper #{} is not a member of set {}", paper, to_string(key)));
  }
  return citation_counts[static_cast<std::size_t>(it - members.begin())];
}

std::int64_t reference_count(const Corpus& corpus, PaperIndex paper, ReferenceBasis basis) {
  if (basis == ReferenceBasis::linked_only) {
    return static_cast<std::int64_t>(corpus.linked_references(paper).size());
  }
  return corpus.listed_references(paper);
}

ReferenceSets ReferenceSets::build(const Corpus& corpus, const RefSetOptions& options) {
  ReferenceSets out;
  out.options_ = options;
  out.membership_.assign(corpus.size(), {});

  // Papers are visited in index order, so members come out sorted.
  std::map<ReferenceSetKey, ReferenceSet> grouped;
  for (PaperIndex i = 0; i < corpus.size(); ++i) {
    const auto& p = corpus.paper(i);
    const bool type_ok = std::find(options.doc_types.begin(), options.doc_types.end(),
                                   p.doc_type) != options.doc_types.end();
    if (!type_ok || !is_mature(corpus, i, options.window)) {
      out.excluded_.push_back(i);
      continue;
    }
    const auto count = citation_count(corpus, i, options.window);
    for (const auto& category : p.categories) {
      ReferenceSetKey key{category, p.pub_year, std::nullopt};
      if (options.partition_by_doc_type) key.doc_type = p.doc_type;
      auto& set = grouped[key];
      set.key = key;
      set.members.push_back(i);
      set.citation_counts.push_back(count);
    }
  }

  out.sets_.reserve(grouped.size());
  for (auto& [key, set] : grouped) {
    const auto n = static_cast<double>(set.members.size());
    const auto citations =
        std::accumulate(set.citation_counts.begin(), set.citation_counts.end(), std::int64_t{0});
    std::int64_t refs = 0;
    for (PaperIndex m : set.members) refs += reference_count(corpus, m, options.reference_basis);
    set.mean_citations = static_cast<double>(citations) / n;
    set.mean_refs = static_cast<double>(refs) / n;
    const auto id = out.sets_.size();
    for (PaperIndex m : set.members) out.membership_[m].push_back(id);
    out.sets_.push_back(std::move(set));
  }
  return out;
}

std::span<const std::size_t> ReferenceSets::sets_of(PaperIndex paper) const {
  return membership_.at(paper);
}

const ReferenceSet* ReferenceSets::find(const ReferenceSetKey& key) const {
  auto it = std::lower_bound(sets_.begin(), sets_.end(), key,
                             [](const ReferenceSet& s, const ReferenceSetKey& k) { return s.key < k; });
  if (it == sets_.end() || it->key != key) return nullptr;
  return &*it;
}

}  // namespace citind
