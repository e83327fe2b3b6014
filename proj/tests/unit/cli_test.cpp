#include <gtest/gtest.h>

#include <sstream>

#include "dcflex/report/cli.hpp"
#include "dcflex/solve/campaign_io.hpp"
#include "json.hpp"
#include "temp_dir.hpp"

using dcflex::report::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dcflex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliPipeline : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fixtures::TempDir();
    auto r = cli({"synth", "--profile", "general_like", "--days", "10", "--resources", "16", "--seed", "3", "--out",
                  path("trace.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static std::string path(const std::string& name) { return (*dir_ / name).string(); }
  static std::vector<std::string> campaign_args(const std::string& cmd, const std::string& out) {
    return {cmd, "--trace", path("trace.csv"), "--resources", "16", "--horizon-steps", "192", "--clusters-per-day",
            "8", "--duration", "1", "--freq", "365,730", "--max-delay", "0.1", "--out", path(out)};
  }

  static fixtures::TempDir* dir_;
};

fixtures::TempDir* CliPipeline::dir_ = nullptr;

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(cli({"--help"}).code, 0);
  auto none = cli({});
  EXPECT_EQ(none.code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"flexmax", "--bogus"}).code, 2);
  EXPECT_EQ(cli({"csf"}).code, 2);
}

TEST(Cli, RuntimeErrorsAreJson) {
  auto r = cli({"csf", "estimate", "--pricing", "/nonexistent/pricing.csv"});
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"]["type"], "data_error");
  EXPECT_EQ(j["error"]["command"], "csf estimate");
  auto bad = cli({"flexmax", "--set", "grid.colour=red", "--jobs", "x.csv", "--out", "y.json"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(nlohmann::json::parse(bad.err)["error"]["type"], "domain_error");
}

TEST(Cli, CsfEstimate) {
  fixtures::TempDir dir;
  auto out = (dir / "csf.csv").string();
  auto r = cli({"csf", "estimate", "--pricing", DCFLEX_TEST_DATA_DIR "/pricing_six.csv", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["samples"], 3);
  EXPECT_EQ(j["duplicates_removed"], 1);
  EXPECT_NEAR(j["percentiles"]["gpu"]["P50"].get<double>(), 5.6, 1e-12);  // two gpu samples: 1.6 and 9.6
  EXPECT_TRUE(std::filesystem::exists(out + ".meta.json"));
}

TEST_F(CliPipeline, IngestAndPreprocess) {
  auto r = cli({"ingest", "--trace", path("trace.csv"), "--days", "8", "--out", path("window.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["window"][1].get<std::int64_t>() - j["window"][0].get<std::int64_t>(), 8 * 86400);
  auto p = cli({"preprocess", "--trace", path("window.csv"), "--resources", "16", "--horizon-steps", "192", "--out",
                path("jobs.csv")});
  ASSERT_EQ(p.code, 0) << p.err;
  auto pj = nlohmann::json::parse(p.out);
  EXPECT_EQ(pj["horizons"].size(), 4u);
  auto meta = nlohmann::json::parse(fixtures::read_file(path("jobs.csv.meta.json")));
  EXPECT_EQ(meta["config"]["grid.horizon_steps"], "192");
  EXPECT_FALSE(meta["config"].contains("run.workers"));
}

TEST_F(CliPipeline, CampaignsReportScaleProfit) {
  auto args = campaign_args("flexmax", "flex.json");
  args.insert(args.end(), {"--csv", path("flex.csv")});
  auto f = cli(args);
  ASSERT_EQ(f.code, 0) << f.err;
  auto flex = dcflex::solve::read_campaign_json(path("flex.json"));
  EXPECT_EQ(flex.horizons, 5);
  EXPECT_EQ(flex.cells.size(), 2u);
  for (const auto& [k, v] : flex.cells) {
    EXPECT_EQ(v.windows_evaluated, 5) << v.note;
    EXPECT_GT(v.norm_flex, 0.0);
  }

  auto cargs = campaign_args("costmin", "cost.json");
  cargs.insert(cargs.end(), {"--fractions", "50,100", "--workers", "2"});
  auto c = cli(cargs);
  ASSERT_EQ(c.code, 0) << c.err;
  auto cost = dcflex::solve::read_campaign_json(path("cost.json"));
  EXPECT_EQ(cost.cells.size(), 4u);
  for (const auto& [k, v] : cost.cells) {
    EXPECT_EQ(v.horizons_failed, 0) << v.note;
    EXPECT_DOUBLE_EQ(v.acof, v.apcof + v.aecof);
  }

  auto rep = cli({"report", "--grid", path("cost.json"), "--out-prefix", path("heat/cost")});
  ASSERT_EQ(rep.code, 0) << rep.err;
  EXPECT_EQ(nlohmann::json::parse(rep.out)["svg"].size(), 2u);  // one panel per fraction

  auto sc = cli({"scale", "--grid", path("cost.json"), "--A", "1", "--R", "2", "--out", path("scaled.json")});
  ASSERT_EQ(sc.code, 0) << sc.err;
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(sc.out)["cost_scaling_factor"].get<double>(), 4.0);
  auto scaled = dcflex::solve::read_campaign_json(path("scaled.json"));
  for (const auto& [k, v] : cost.cells) EXPECT_NEAR(scaled.cells.at(k).acof, 4.0 * v.acof, 1e-12 * (1 + v.acof));

  dir_->write("fr.csv", "timestamp,price\n2023-01-01T00:00:00Z,0.001\n2023-01-01T01:00:00Z,1000\n");
  auto pr = cli({"profit", "--grid", path("cost.json"), "--prices", path("fr.csv"), "--percentiles", "0,100",
                 "--out", path("profit.json")});
  ASSERT_EQ(pr.code, 0) << pr.err;
  EXPECT_NE(pr.out.find("from P100"), std::string::npos);
  auto pj = nlohmann::json::parse(fixtures::read_file(path("profit.json")));
  EXPECT_EQ(pj["cells"].size(), 4u);

  auto wrong = cli({"profit", "--grid", path("flex.json"), "--prices", path("fr.csv")});
  EXPECT_EQ(wrong.code, 1);
}

TEST_F(CliPipeline, ConfigFileAndEcho) {
  dir_->write("run.ini", "[service]\ndurations_hours = 2\nannual_frequencies = 365\nmax_delays = 0.2\n"
                         "[datacenter]\ntotal_resources = 16\n[grid]\nhorizon_steps = 192\n"
                         "[data]\nclusters_per_day = 8\n");
  auto r = cli({"flexmax", "--config", path("run.ini"), "--trace", path("trace.csv"), "--max-delay", "0.1", "--out",
                path("cfg.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto g = dcflex::solve::read_campaign_json(path("cfg.json"));
  ASSERT_EQ(g.cells.size(), 1u);
  EXPECT_DOUBLE_EQ(g.cells.begin()->first.max_delay, 0.1);  // flag beats file
  EXPECT_DOUBLE_EQ(g.cells.begin()->first.duration_hours, 2);
}
