#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "citind/cli.hpp"
#include "test_util.hpp"

using namespace citind;

namespace {

struct Run {
  int status = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "citind");
  std::ostringstream out, err;
  Run r;
  r.status = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string micro(const std::string& file) { return testutil::data_dir() + "/micro/" + file; }

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("citind_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, ComputeMicroFixture) {
  auto r = run({"compute", "--papers", micro("papers.csv"), "--citations", micro("citations.csv"), "--config",
                micro("config.json")});
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header,
            "paper_id,citations_window,citations_open,mncs,csncr,css_class,sncs1,sncs2,sncs3,hazen,incites_inv,"
            "pptop50,pptop10,pptop1,i3,rcr_simplified");
  std::string p1;
  std::getline(lines, p1);
  EXPECT_EQ(p1.rfind("P1,3,4,", 0), 0u) << p1;
  EXPECT_NE(p1.find(",2.8,1.83333,2.83333,"), std::string::npos) << p1;
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST_F(CliTest, WindowOverrideAndImmatureList) {
  auto r = run({"compute", "--papers", micro("papers.csv"), "--citations", micro("citations.csv"), "--window", "3",
                "--census-year", "2012", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.err.find("immature"), std::string::npos);
  EXPECT_NE(r.err.find("P5"), std::string::npos);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 5u);
}

TEST_F(CliTest, ValidateWithoutScoresFails) {
  std::ofstream(path("papers.csv")) << testutil::kPaperHeader << "A,,2010,article,J,X,,\nB,,2010,article,J,X,,\n";
  std::ofstream(path("cites.csv")) << "citing_id,cited_id\nB,A\n";
  auto r = run({"validate", "--papers", path("papers.csv"), "--citations", path("cites.csv"), "--out",
                path("validity.json")});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("no scored papers"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path("validity.json")));
}

TEST_F(CliTest, ValidateMicroFixture) {
  auto r = run({"validate", "--papers", micro("papers.csv"), "--citations", micro("citations.csv"), "--config",
                micro("config.json"), "--indicators", "citations_window,mncs,sncs2,hazen", "--format", "json",
                "--means-out", path("means.csv"), "--correlations-out", path("spearman.csv")});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("groups"));
  EXPECT_TRUE(j.contains("means"));
  EXPECT_TRUE(j.contains("growth"));
  EXPECT_TRUE(j.contains("correlations"));
  EXPECT_EQ(slurp(path("means.csv")).substr(0, 9), "indicator");
  EXPECT_TRUE(std::filesystem::exists(path("spearman.csv")));
}

TEST_F(CliTest, ReportTwiceIsByteIdentical) {
  auto c = run({"compute", "--papers", micro("papers.csv"), "--citations", micro("citations.csv"), "--config",
                micro("config.json"), "--format", "json", "--precision", "0", "--out", path("table.json")});
  ASSERT_EQ(c.status, 0) << c.err;
  auto a = run({"report", "--table", path("table.json"), "--format", "csv", "--out", path("a.csv")});
  auto b = run({"report", "--table", path("table.json"), "--format", "csv", "--out", path("b.csv")});
  ASSERT_EQ(a.status, 0) << a.err;
  ASSERT_EQ(b.status, 0) << b.err;
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_FALSE(slurp(path("a.csv")).empty());
}

TEST_F(CliTest, IngestSummary) {
  auto r = run({"ingest", "--papers", micro("papers.csv"), "--citations", micro("citations.csv"), "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["papers"], 6);
  EXPECT_EQ(j["linked_references"], 8);
  EXPECT_EQ(j["unlinked_references"], 2);
  EXPECT_EQ(j["missing_quality_scores"], 1);
}

TEST_F(CliTest, ErrorsExitNonZero) {
  EXPECT_NE(run({"compute", "--papers", path("absent.csv"), "--citations", micro("citations.csv")}).status, 0);
  EXPECT_NE(run({"compute", "--papers", micro("papers.csv"), "--citations", micro("citations.csv"), "--window",
                 "zero"})
                .status,
            0);
  EXPECT_NE(run({"frobnicate"}).status, 0);
  EXPECT_NE(run({}).status, 0);
  std::ofstream(path("bad.json")) << R"({"unknown_key": 1})";
  auto r = run({"compute", "--papers", micro("papers.csv"), "--citations", micro("citations.csv"), "--config",
                path("bad.json"), "--out", path("t.csv")});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("unknown_key"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path("t.csv")));
}

TEST_F(CliTest, IciteFromCacheWithoutNetwork) {
  {
    std::ofstream cache(path("cache.jsonl"));
    cache << R"({"pmid":"11111111","rcr":2.13,"raw":""})" << '\n'
          << R"({"pmid":"22222222","rcr":null,"raw":""})" << '\n'
          << R"({"pmid":"44444444","rcr":0.5,"raw":""})" << '\n';
  }
  auto r = run({"icite", "--papers", micro("papers.csv"), "--pmid-map", micro("pmids.json"), "--cache",
                path("cache.jsonl"), "--out", path("icite.csv")});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto text = slurp(path("icite.csv"));
  EXPECT_NE(text.find("P1,10.1000/micro.1,11111111,2.13\n"), std::string::npos) << text;
  EXPECT_NE(text.find("P5,,,\n"), std::string::npos);

  auto c = run({"compute", "--papers", micro("papers.csv"), "--citations", micro("citations.csv"), "--config",
                micro("config.json"), "--icite", path("icite.csv")});
  ASSERT_EQ(c.status, 0) << c.err;
  EXPECT_NE(c.out.find(",rcr_simplified,rcr_icite\n"), std::string::npos);

  // an uncached pmid needs the network, which is off
  std::filesystem::remove(path("cache.jsonl"));
  auto offline = run({"icite", "--papers", micro("papers.csv"), "--pmid-map", micro("pmids.json"), "--cache",
                      path("cache.jsonl"), "--out", path("icite2.csv")});
  EXPECT_NE(offline.status, 0);
  EXPECT_NE(offline.err.find("network access is disabled"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path("icite2.csv")));
}
