#include <gtest/gtest.h>

#include <map>

#include "campaign_fixtures.hpp"
#include "dcflex/ingest/csv.hpp"
#include "dcflex/report/config.hpp"
#include "dcflex/report/heatmap.hpp"
#include "dcflex/report/synthetic.hpp"
#include "dcflex/solve/campaign_io.hpp"
#include "fixtures.hpp"
#include "temp_dir.hpp"

using namespace dcflex;
using namespace dcflex::report;

namespace {

solve::CampaignResult two_by_two() {
  solve::CampaignResult r;
  double v = 0.1;
  for (double d : {1.0, 0.5}) {
    for (double f : {730.0, 365.0}) {
      solve::CellValue c;
      c.norm_flex = v;
      c.windows_evaluated = 1;
      v += 0.2;
      r.cells[{d, f, 0.2, std::nullopt}] = c;
    }
  }
  r.cells[{1.0, 730.0, 0.5, std::nullopt}] = solve::CellValue{};  // never evaluated
  return r;
}

}  // namespace

TEST(Heatmap, PanelsAreSortedAndSummarized) {
  auto panels = make_panels(two_by_two(), "norm_flex");
  ASSERT_EQ(panels.size(), 2u);
  const auto& p = panels[0];
  EXPECT_DOUBLE_EQ(p.max_delay, 0.2);
  EXPECT_EQ(p.durations, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(p.frequencies, (std::vector<double>{365, 730}));
  // Inserted as (1,730)=0.1 (1,365)=0.3 (0.5,730)=0.5 (0.5,365)=0.7.
  EXPECT_DOUBLE_EQ(*p.values[0][0], 0.7);
  EXPECT_DOUBLE_EQ(*p.values[1][1], 0.1);
  EXPECT_DOUBLE_EQ(p.min, 0.1);
  EXPECT_DOUBLE_EQ(p.max, 0.7);
  EXPECT_NEAR(p.mean, 0.4, 1e-12);
  EXPECT_FALSE(panels[1].values[0][0].has_value());
  auto svg = render_svg(panels[1], "norm_flex");
  EXPECT_NE(svg.find("n/a"), std::string::npos);
  EXPECT_THROW(make_panels(two_by_two(), "colour"), DomainError);
  EXPECT_THROW(make_panels({}, "norm_flex"), DomainError);
}

TEST(Heatmap, TinyASingleCellExport) {
  const solve::HighsBackend backend;
  auto p = fixtures::tiny_a();
  auto c = fixtures::single_cell_config(p, 0.25, 365, p.plan);
  auto grid = solve::run_flexmax_campaign(fixtures::as_horizons(p), c, backend);
  fixtures::TempDir dir;
  auto files = heatmap_export(grid, "norm_flex", dir / "out" / "tiny");
  ASSERT_EQ(files.svgs.size(), 1u);
  EXPECT_EQ(files.svgs[0].filename(), "tiny_norm_flex_delay1.svg");
  auto svg = fixtures::read_file(files.svgs[0]);
  EXPECT_NE(svg.find(">1</text>"), std::string::npos);
  EXPECT_NE(svg.find("<svg"), std::string::npos);

  auto csv = ingest::read_csv(files.csv);
  bool found = false;
  for (const auto& row : csv.rows) {
    if (row[4] == "norm_flex") {
      found = true;
      EXPECT_NEAR(std::stod(row[5]), 1.0, 1e-6);
      EXPECT_EQ(row[3], "max");
    }
  }
  EXPECT_TRUE(found);
}

TEST(ConfigTest, PrecedenceDefaultsFileEnvSet) {
  fixtures::TempDir dir;
  auto ini = dir.write("c.ini",
                       "[datacenter]\ntotal_resources = 128\nunit_power_kw = 0.3\n"
                       "[econ]\nenergy_price = 0.07\n");
  auto cfg = Config::defaults();
  EXPECT_EQ(cfg.get_double("datacenter.total_resources"), 64);
  cfg.load_file(ini);
  EXPECT_EQ(cfg.get_double("datacenter.total_resources"), 128);
  std::map<std::string, std::string> env{{"DCFLEX_DATACENTER_UNIT_POWER_KW", "0.4"},
                                         {"DCFLEX_ECON_ENERGY_PRICE", "0.09"}};
  cfg.apply_env([&](const char* name) -> const char* {
    auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  EXPECT_DOUBLE_EQ(cfg.get_double("datacenter.unit_power_kw"), 0.4);
  cfg.set_assignment("econ.energy_price=0.11");
  EXPECT_DOUBLE_EQ(cfg.get_double("econ.energy_price"), 0.11);
  EXPECT_DOUBLE_EQ(cfg.get_double("datacenter.total_resources"), 128);
  EXPECT_EQ(Config::env_name("run.mip_rel_gap"), "DCFLEX_RUN_MIP_REL_GAP");
}

TEST(ConfigTest, TypedAccessAndErrors) {
  auto cfg = Config::defaults();
  EXPECT_EQ(cfg.get_list("service.annual_frequencies"), (std::vector<double>{365, 730, 1460, 2920}));
  EXPECT_TRUE(cfg.get_bool("run.tighten"));
  EXPECT_EQ(cfg.get_uint64("run.seed"), 1u);
  EXPECT_EQ(cfg.get_int("grid.horizon_steps"), 960);
  EXPECT_THROW(cfg.set("grid.colour", "red"), DomainError);
  EXPECT_THROW(cfg.set_assignment("novalue"), DomainError);
  EXPECT_THROW(cfg.get_double("datacenter.device_class"), DomainError);
  cfg.set("run.seed", "-3");
  EXPECT_THROW(cfg.get_uint64("run.seed"), DomainError);

  fixtures::TempDir dir;
  Config bad = Config::defaults();
  EXPECT_THROW(bad.load_file(dir.write("u.ini", "[grid]\ncolour = red\n")), DomainError);
  EXPECT_THROW(bad.load_file(dir.write("o.ini", "loose = 1\n")), DataError);
}

TEST(Synthetic, RespectsGridAndCapacity) {
  TimeGrid g;
  g.origin_unix_s = 1'704'067'200;
  DataCenterSpec spec;
  spec.total_resources = 32;
  for (auto profile : {TraceProfile::ai_like, TraceProfile::general_like}) {
    auto t = generate_synthetic_trace(profile, 12, 9, g, spec);
    ASSERT_FALSE(t.rows.empty());
    const std::int64_t step = g.step_seconds();
    const int steps = 12 * 96;
    std::vector<double> usage(static_cast<std::size_t>(steps), 0.0);
    for (const auto& r : t.rows) {
      EXPECT_EQ((r.start_unix_s - g.origin_unix_s) % step, 0);
      EXPECT_EQ((r.end_unix_s - r.start_unix_s) % step, 0);
      EXPECT_GT(r.end_unix_s, r.start_unix_s);
      EXPECT_LE(r.submit_unix_s, r.start_unix_s);
      EXPECT_GE(r.submit_unix_s, std::max(g.origin_unix_s, r.start_unix_s - 3600));
      const auto a = (r.start_unix_s - g.origin_unix_s) / step;
      const auto b = std::min<std::int64_t>((r.end_unix_s - g.origin_unix_s) / step, steps);
      for (auto s = a; s < b; ++s) usage[static_cast<std::size_t>(s)] += r.resources;
    }
    double peak = 0.0;
    for (double u : usage) peak = std::max(peak, u);
    EXPECT_LE(peak, 0.95 * 32 + 1e-9) << to_string(profile);
  }
}

TEST(Synthetic, ProfilesDifferInJobLength) {
  TimeGrid g;
  DataCenterSpec spec;
  spec.total_resources = 32;
  auto mean_hours = [&](TraceProfile p) {
    auto t = generate_synthetic_trace(p, 10, 3, g, spec);
    double s = 0.0;
    for (const auto& r : t.rows) s += static_cast<double>(r.end_unix_s - r.start_unix_s) / 3600.0;
    return s / static_cast<double>(t.rows.size());
  };
  EXPECT_GT(mean_hours(TraceProfile::ai_like), 4.0);
  EXPECT_LT(mean_hours(TraceProfile::general_like), 4.0);
}

TEST(Synthetic, DeterministicAndValidated) {
  TimeGrid g;
  DataCenterSpec spec;
  auto a = generate_synthetic_trace(TraceProfile::general_like, 10, 5, g, spec);
  auto b = generate_synthetic_trace(TraceProfile::general_like, 10, 5, g, spec);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_THROW(generate_synthetic_trace(TraceProfile::ai_like, 9, 5, g, spec), DomainError);
  EXPECT_EQ(parse_trace_profile("ai_like"), TraceProfile::ai_like);
  EXPECT_THROW(parse_trace_profile("quantum"), DomainError);
}
