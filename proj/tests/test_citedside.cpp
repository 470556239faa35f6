#include <gtest/gtest.h>

#include <map>
#include <random>

#include "citind/citedside.hpp"
#include "citind/error.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace citind;

namespace {

struct Member {
  std::string id;
  std::string categories;
  int citations = 0;
  int refs = 0;
};

// Members published in 2010; citing paper Ck (2011, category ZZ) cites every
// member with more than k citations.
Corpus set_corpus(const std::vector<Member>& members) {
  std::string papers, cites;
  int most = 0;
  for (const auto& m : members) {
    papers += m.id + ",,2010,article,J," + m.categories + "," + std::to_string(m.refs) + ",\n";
    most = std::max(most, m.citations);
  }
  for (int k = 0; k < most; ++k) {
    papers += "C" + std::to_string(k) + ",,2011,article,K,ZZ,,\n";
    for (const auto& m : members) {
      if (m.citations > k) cites += "C" + std::to_string(k) + "," + m.id + "\n";
    }
  }
  return testutil::corpus(papers, cites);
}

std::vector<Member> single_category(const std::vector<int>& counts) {
  std::vector<Member> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.push_back({"M" + std::to_string(100 + i), "X", counts[i], 10});
  }
  return out;
}

}  // namespace

TEST(Mncs, SingleCategoryRatio) {
  auto c = set_corpus({{"A", "X", 10, 1}, {"B", "X", 0, 1}});
  auto sets = ReferenceSets::build(c, {});
  EXPECT_DOUBLE_EQ(mncs(sets, c.index_of("A")).value, 2.0);
  EXPECT_DOUBLE_EQ(mncs(sets, c.index_of("B")).value, 0.0);
}

TEST(Mncs, AveragesOverCategories) {
  auto c = set_corpus({{"F", "A|B", 10, 1}, {"G", "A", 0, 1}, {"H", "B", 10, 1}});
  auto sets = ReferenceSets::build(c, {});
  EXPECT_DOUBLE_EQ(mncs(sets, c.index_of("F")).value, 1.5);
}

TEST(Mncs, DegenerateSetContributesZero) {
  auto c = set_corpus({{"A", "X", 0, 1}, {"B", "X", 0, 1}});
  auto sets = ReferenceSets::build(c, {});
  auto s = mncs(sets, c.index_of("A"));
  EXPECT_EQ(s.value, 0.0);
  EXPECT_TRUE(s.degenerate);
}

TEST(Mncs, PaperWithoutSetIsAnError) {
  auto c = testutil::corpus("A,,2010,letter,J,X,,\n", "");
  auto sets = ReferenceSets::build(c, {});
  EXPECT_THROW(mncs(sets, 0), DomainError);
}

TEST(Mncs, SetMeanIsOne) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> size(1, 12), cites(0, 25);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> counts(size(rng));
    for (auto& v : counts) v = cites(rng);
    counts[0] = std::max(counts[0], 1);
    auto c = set_corpus(single_category(counts));
    auto sets = ReferenceSets::build(c, {});
    const auto* set = sets.find({"X", 2010, std::nullopt});
    ASSERT_NE(set, nullptr);
    double sum = 0.0;
    for (auto m : set->members) sum += mncs(sets, m).value;
    EXPECT_NEAR(sum / static_cast<double>(set->members.size()), 1.0, 1e-12);
  }
}

TEST(Mncs, ScaleInvariantUnlikeCsncr) {
  const std::vector<int> counts{0, 1, 2, 2, 5, 9};
  auto base = set_corpus(single_category(counts));
  std::vector<int> tripled;
  for (int v : counts) tripled.push_back(3 * v);
  auto scaled = set_corpus(single_category(tripled));
  auto bs = ReferenceSets::build(base, {});
  auto ss = ReferenceSets::build(scaled, {});
  const auto bt = css_thresholds_by_set(bs);
  const auto st = css_thresholds_by_set(ss);
  bool csncr_changed = false;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto id = "M" + std::to_string(100 + i);
    const auto b = base.index_of(id), s = scaled.index_of(id);
    EXPECT_NEAR(mncs(bs, b).value, mncs(ss, s).value, 1e-12);
    EXPECT_EQ(css_score(bs, bt, b), css_score(ss, st, s));
    if (csncr(bs, b).value != csncr(ss, s).value) csncr_changed = true;
  }
  EXPECT_TRUE(csncr_changed);
}

TEST(Csncr, RatioToMeanReferences) {
  auto c = set_corpus({{"A", "X", 12, 24}, {"B", "X", 0, 24}});
  auto sets = ReferenceSets::build(c, {});
  EXPECT_DOUBLE_EQ(csncr(sets, c.index_of("A")).value, 0.5);
  EXPECT_DOUBLE_EQ(csncr(sets, c.index_of("B")).value, 0.0);
}

TEST(Csncr, AveragesOverCategories) {
  auto c = set_corpus({{"F", "A|B", 10, 20}, {"G", "A", 0, 20}, {"H", "B", 0, 60}});
  auto sets = ReferenceSets::build(c, {});
  EXPECT_DOUBLE_EQ(csncr(sets, c.index_of("F")).value, 0.375);
}

TEST(Csncr, ZeroReferencesWithCitationsIsAnError) {
  auto c = set_corpus({{"A", "X", 3, 0}, {"B", "X", 0, 0}});
  auto sets = ReferenceSets::build(c, {});
  EXPECT_THROW(csncr(sets, c.index_of("A")), DomainError);
  auto b = csncr(sets, c.index_of("B"));
  EXPECT_EQ(b.value, 0.0);
  EXPECT_TRUE(b.degenerate);
}

TEST(Csncr, LinkedOnlyBasis) {
  auto c = testutil::corpus("A,,2010,article,J,X,10,\nB,,2009,article,J,Y,,\nC,,2011,article,J,Y,,\n",
                            "A,B\nA,Q1\nA,Q2\nA,Q3\nC,A\n");
  RefSetOptions opts;
  opts.reference_basis = ReferenceBasis::linked_only;
  auto linked = ReferenceSets::build(c, opts);
  EXPECT_DOUBLE_EQ(csncr(linked, c.index_of("A")).value, 1.0);
  auto all = ReferenceSets::build(c, {});
  EXPECT_DOUBLE_EQ(csncr(all, c.index_of("A")).value, 0.1);
}

TEST(Css, HandIteratedThresholds) {
  const std::vector<double> v{0, 0, 1, 2, 2, 5, 10, 40};
  auto t = css_thresholds(v);
  EXPECT_EQ(t.bounds, (std::vector<double>{7.5, 25.0, 40.0}));
  std::map<int, int> sizes;
  for (double c : v) ++sizes[css_class(c, t)];
  EXPECT_EQ(sizes[1], 6);
  EXPECT_EQ(sizes[2], 1);
  EXPECT_EQ(sizes[3], 0);
  EXPECT_EQ(sizes[4], 1);
  EXPECT_EQ(css_class(0, t), 1);
  EXPECT_EQ(css_class(10, t), 2);
  EXPECT_EQ(css_class(25, t), 3);
  EXPECT_EQ(css_class(40, t), 4);
}

TEST(Css, DegenerateSamples) {
  const std::vector<double> equal{3, 3, 3};
  EXPECT_EQ(css_thresholds(equal).bounds, std::vector<double>{3.0});
  const std::vector<double> single{7};
  EXPECT_EQ(css_thresholds(single).bounds, std::vector<double>{7.0});
  EXPECT_THROW(css_thresholds(std::vector<double>{}), DomainError);
  // Only b_1 exists: the upper classes collapse into the top one.
  auto t = css_thresholds(equal);
  EXPECT_EQ(css_class(2, t), 1);
  EXPECT_EQ(css_class(3, t), 4);
}

TEST(Css, MatchesTruncationOracle) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> size(1, 30), k(2, 6);
  std::geometric_distribution<int> cites(0.2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(size(rng));
    for (auto& x : v) x = cites(rng);
    const int classes = k(rng);
    auto t = css_thresholds(v, classes);
    auto expected = oracle::css_thresholds(v, classes);
    ASSERT_EQ(t.bounds.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(t.bounds[i], expected[i], 1e-12);
    for (std::size_t i = 1; i < t.bounds.size(); ++i) EXPECT_LT(t.bounds[i - 1], t.bounds[i]);
    int previous = 0;
    for (int c = 0; c <= 60; ++c) {
      const int cls = css_class(c, t);
      EXPECT_EQ(cls, oracle::css_class(c, expected, classes));
      EXPECT_GE(cls, previous);
      previous = cls;
    }
  }
}

TEST(Rcr, RatioToCocitedMean) {
  // F has 10 citations, B 5, C 15; co-cited mean (5 + 15) / 2 = 10.
  std::string papers = "F,,2010,article,J,X,,\nB,,2010,article,J,X,,\nC,,2010,article,J,X,,\n";
  std::string cites;
  const std::map<std::string, int> counts{{"F", 10}, {"B", 5}, {"C", 15}};
  for (int k = 0; k < 20; ++k) {
    const auto citing = "Z" + std::to_string(k);
    papers += citing + ",,2011,article,K,Y,,\n";
    if (k < 5) {
      cites += citing + ",F\n" + citing + ",B\n";
    } else if (k < 10) {
      cites += citing + ",F\n" + citing + ",C\n";
    } else {
      cites += citing + ",C\n";
    }
  }
  auto c = testutil::corpus(papers, cites);
  auto r = rcr_simplified(c, c.index_of("F"), CitationWindow::open());
  ASSERT_TRUE(r.has_value());
  EXPECT_DOUBLE_EQ(*r, 1.0);
  EXPECT_FALSE(rcr_simplified(c, c.index_of("Z0"), CitationWindow::open()).has_value());
}

TEST(Rcr, MatchesBruteForce) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> size(3, 10), coin(0, 2), year(2009, 2014);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = size(rng);
    std::vector<int> years(n);
    std::string papers, cites;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
      years[i] = year(rng);
      papers += "P" + std::to_string(i) + ",," + std::to_string(years[i]) + ",article,J,X,,\n";
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b && coin(rng) == 0) {
          edges.emplace_back(a, b);
          cites += "P" + std::to_string(a) + ",P" + std::to_string(b) + "\n";
        }
      }
    }
    auto c = testutil::corpus(papers, cites);
    auto count = [&](int p) {
      int k = 0;
      for (auto [a, b] : edges) k += b == p && years[a] >= years[p] ? 1 : 0;
      return k;
    };
    for (int p = 0; p < n; ++p) {
      std::vector<bool> cocited(n, false);
      for (auto [a, b] : edges) {
        if (b != p) continue;
        for (auto [a2, b2] : edges) {
          if (a2 == a && b2 != p) cocited[b2] = true;
        }
      }
      double total = 0.0;
      int members = 0;
      for (int q = 0; q < n; ++q) {
        if (cocited[q]) {
          total += count(q);
          ++members;
        }
      }
      auto got = rcr_simplified(c, c.index_of("P" + std::to_string(p)), CitationWindow::open());
      if (members == 0 || total == 0.0) {
        EXPECT_FALSE(got.has_value());
      } else {
        ASSERT_TRUE(got.has_value());
        EXPECT_NEAR(*got, count(p) / (total / members), 1e-12);
      }
    }
  }
}
