#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "citind/error.hpp"
#include "citind/validity.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace citind;

namespace {

IndicatorTable make_table(std::vector<std::string> columns,
                          std::vector<std::pair<std::string, std::vector<std::optional<double>>>> rows) {
  IndicatorTable t;
  t.columns = std::move(columns);
  for (auto& [id, values] : rows) {
    t.paper_ids.push_back(id);
    t.rows.push_back(values);
  }
  return t;
}

QualityGroups fixed_groups(std::map<std::string, int> assignment) {
  QualityGroups g;
  g.assignment = std::move(assignment);
  return g;
}

}  // namespace

TEST(QualityGroups, CssOnScores) {
  auto c = testutil::papers_only(
      "A,,2010,article,J,X,,1\nB,,2010,article,J,X,,1\nC,,2010,article,J,X,,1\nD,,2010,article,J,X,,2\n"
      "E,,2010,article,J,X,,2\nF,,2010,article,J,X,,3\nG,,2010,article,J,X,,5\nH,,2010,article,J,X,,9\n"
      "U,,2010,article,J,X,,\n");
  auto g = group_by_scores(c);
  const std::vector<double> scores{1, 1, 1, 2, 2, 3, 5, 9};
  const auto bounds = oracle::css_thresholds(scores, 4);
  EXPECT_EQ(g.thresholds.bounds, bounds);
  EXPECT_EQ(bounds, (std::vector<double>{3, 7, 9}));
  const std::vector<std::string> ids{"A", "B", "C", "D", "E", "F", "G", "H"};
  for (std::size_t i = 0; i < ids.size(); ++i) {
    EXPECT_EQ(g.assignment.at(ids[i]), oracle::css_class(scores[i], bounds, 4));
  }
  EXPECT_FALSE(g.assignment.contains("U"));
  EXPECT_EQ(g.sizes(), (std::map<int, std::size_t>{{1, 5}, {2, 2}, {4, 1}}));
}

TEST(QualityGroups, EqualScoresGiveAtMostTwoGroups) {
  auto c = testutil::papers_only("A,,2010,article,J,X,,2\nB,,2010,article,J,X,,2\n");
  auto g = group_by_scores(c);
  EXPECT_EQ(g.thresholds.bounds.size(), 1u);
  EXPECT_LE(g.sizes().size(), 2u);
}

TEST(QualityGroups, NoScoredPapers) {
  auto c = testutil::papers_only("A,,2010,article,J,X,,\n");
  try {
    group_by_scores(c);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "no scored papers");
  }
}

TEST(GroupMeans, HandFixture) {
  auto t = make_table({"x", "y"}, {{"a", {1.0, 10.0}}, {"b", {3.0, 20.0}}, {"c", {5.0, 40.0}}, {"d", {7.0, 80.0}}});
  auto g = fixed_groups({{"a", 1}, {"b", 1}, {"c", 2}, {"d", 2}});
  const std::vector<std::string> ind{"x", "y"};
  auto m = group_means(t, g, ind);
  EXPECT_EQ(m.groups, (std::vector<int>{1, 2}));
  EXPECT_EQ(m.means[0], (std::vector<double>{2.0, 6.0}));
  EXPECT_EQ(m.means[1], (std::vector<double>{15.0, 60.0}));
  EXPECT_EQ(m.group_sizes, (std::vector<std::size_t>{2, 2}));
}

TEST(GroupMeans, SinglePaperGroup) {
  auto t = make_table({"x"}, {{"a", {4.25}}});
  const std::vector<std::string> ind{"x"};
  EXPECT_EQ(group_means(t, fixed_groups({{"a", 3}}), ind).means[0][0], 4.25);
}

TEST(GroupMeans, MissingValuePolicies) {
  auto t = make_table({"x", "y"}, {{"a", {1.0, std::nullopt}}, {"b", {3.0, 5.0}}, {"c", {5.0, 7.0}}});
  auto g = fixed_groups({{"a", 1}, {"b", 1}, {"c", 2}});
  const std::vector<std::string> ind{"x", "y"};
  auto listwise = group_means(t, g, ind, MissingPolicy::listwise);
  EXPECT_EQ(listwise.means[0][0], 3.0);
  auto per = group_means(t, g, ind, MissingPolicy::per_indicator);
  EXPECT_EQ(per.means[0][0], 2.0);
  EXPECT_EQ(per.means[1][0], 5.0);
  EXPECT_EQ(per.coverage[0][0], 2u);
  EXPECT_EQ(per.coverage[1][0], 1u);
}

TEST(GroupMeans, EmptyGroupForIndicator) {
  auto t = make_table({"x"}, {{"a", {std::nullopt}}, {"b", {1.0}}});
  auto g = fixed_groups({{"a", 1}, {"b", 2}});
  const std::vector<std::string> ind{"x"};
  EXPECT_THROW(group_means(t, g, ind, MissingPolicy::per_indicator), DomainError);
  EXPECT_THROW(group_means(t, g, std::vector<std::string>{"nope"}), Error);
}

TEST(GrowthRates, Examples) {
  auto i3 = growth_rates(std::vector<double>{11.68, 14.63, 22.66, 39.03});
  EXPECT_NEAR(i3.sagr, 152.39, 0.005);
  EXPECT_NEAR(i3.aagr, 50.80, 0.005);
  auto flat = growth_rates(std::vector<double>{3, 3, 3, 3});
  EXPECT_EQ(flat.sagr, 0.0);
  EXPECT_EQ(flat.aagr, 0.0);
  auto doubling = growth_rates(std::vector<double>{1, 2, 4, 8});
  EXPECT_EQ(doubling.rates, (std::vector<double>{100, 100, 100}));
  EXPECT_EQ(doubling.sagr, 300.0);
  EXPECT_EQ(doubling.aagr, 100.0);
  EXPECT_THROW(growth_rates(std::vector<double>{1}), DomainError);
  EXPECT_THROW(growth_rates(std::vector<double>{0, 1, 2}), DomainError);
}

TEST(GrowthRates, ScaleInvariantAndConsistent) {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> value(0.5, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> m(4), scaled(4);
    for (auto& x : m) x = value(rng);
    for (int i = 0; i < 4; ++i) scaled[i] = 4.0 * m[i];  // power of two keeps the ratios exact
    auto a = growth_rates(m), b = growth_rates(scaled);
    EXPECT_EQ(a.rates, b.rates);
    EXPECT_EQ(a.aagr, a.sagr / 3.0);
    EXPECT_NEAR(a.sagr, oracle::growth_sagr(m), 1e-9);
  }
}

TEST(RankIndicators, DiffToPrevious) {
  auto r = rank_indicators({{"b", {}, {{}, 172.17, 0}}, {"a", {}, {{}, 201.72, 0}}});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].indicator, "a");
  EXPECT_EQ(r.rows[0].rank, 1);
  EXPECT_FALSE(r.rows[0].diff_to_previous.has_value());
  EXPECT_NEAR(*r.rows[1].diff_to_previous, -29.55, 1e-9);
  auto single = rank_indicators({{"only", {}, {{}, 5.0, 0}}});
  EXPECT_EQ(single.rows[0].rank, 1);
  EXPECT_FALSE(single.rows[0].diff_to_previous.has_value());
}

TEST(RankIndicators, MatchesSortOracle) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> sagr(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<IndicatorGrowth> in;
    std::vector<std::pair<double, std::string>> expected;
    for (const char* name : {"c", "a", "b"}) {
      const double s = sagr(rng) * 10.0;
      in.push_back({name, {}, {{}, s, s / 3}});
      expected.emplace_back(-s, name);
    }
    std::sort(expected.begin(), expected.end());
    auto r = rank_indicators(in);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(r.rows[i].indicator, expected[i].second);
      EXPECT_EQ(r.rows[i].rank, static_cast<int>(i) + 1);
      if (i > 0) EXPECT_LE(*r.rows[i].diff_to_previous, 0.0);
    }
  }
}

TEST(Spearman, Basics) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> rev{5, 4, 3, 2, 1};
  EXPECT_NEAR(spearman(x, x), 1.0, 1e-12);
  EXPECT_NEAR(spearman(x, rev), -1.0, 1e-12);
  EXPECT_THROW(spearman(x, std::vector<double>{1, 2}), DomainError);
  EXPECT_THROW(spearman(std::vector<double>{1}, std::vector<double>{2}), DomainError);
  EXPECT_THROW(spearman(x, std::vector<double>(5, 1.0)), DomainError);
  EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 20, 5}), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(Spearman, MatchesOracleWithTies) {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> size(2, 10), value(0, 4);
  int checked = 0;
  while (checked < 500) {
    const int n = size(rng);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = value(rng);
      y[i] = value(rng);
    }
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }) ||
        std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) {
      continue;
    }
    EXPECT_NEAR(spearman(x, y), oracle::spearman(x, y), 1e-12);
    ++checked;
  }
}

TEST(CorrelationMatrix, SymmetricWithUnitDiagonal) {
  auto t = make_table({"x", "y", "z"}, {{"a", {1.0, 2.0, 5.0}},
                                        {"b", {2.0, 1.0, 5.0}},
                                        {"c", {3.0, 4.0, 5.0}},
                                        {"d", {4.0, 3.0, std::nullopt}}});
  const std::vector<std::string> ind{"x", "y", "z"};
  auto m = correlation_matrix(t, ind, MissingPolicy::per_indicator);
  EXPECT_NEAR(*m.values[0][0], 1.0, 1e-12);
  EXPECT_EQ(m.values[0][1], m.values[1][0]);
  EXPECT_NEAR(*m.values[0][1], 0.6, 1e-12);
  EXPECT_FALSE(m.values[0][2].has_value());  // z is constant
  EXPECT_EQ(m.observations[0][1], 4u);
  auto listwise = correlation_matrix(t, ind, MissingPolicy::listwise);
  EXPECT_EQ(listwise.observations[0][1], 3u);
}

TEST(NormalizedSlope, LinearMeans) {
  EXPECT_NEAR(normalized_slope(std::vector<double>{2, 4, 6, 8}), 1.0, 1e-12);
  EXPECT_NEAR(normalized_slope(std::vector<double>{5, 5, 5}), 0.0, 1e-12);
}

TEST(AnalyzeValidity, EndToEndOnTable) {
  auto t = make_table({"good", "flat", "broken"}, {{"a", {1.0, 1.0, 0.0}},
                                                  {"b", {2.0, 1.0, 0.0}},
                                                  {"c", {4.0, 1.0, 1.0}},
                                                  {"z", {9.0, 9.0, 9.0}}});
  auto g = fixed_groups({{"a", 1}, {"b", 2}, {"c", 3}});
  const std::vector<std::string> ind{"good", "flat", "broken"};
  auto r = analyze_validity(t, g, ind);
  ASSERT_EQ(r.growth.rows.size(), 2u);
  EXPECT_EQ(r.growth.rows[0].indicator, "good");
  EXPECT_EQ(r.growth.rows[0].growth.sagr, 200.0);
  ASSERT_EQ(r.undefined_growth.size(), 1u);
  EXPECT_EQ(r.undefined_growth[0].first, "broken");
  EXPECT_EQ(r.correlations.observations[0][0], 3u);  // z is ungrouped
}
