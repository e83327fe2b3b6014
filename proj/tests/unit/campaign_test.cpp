#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "campaign_fixtures.hpp"
#include "dcflex/solve/campaign.hpp"
#include "dcflex/solve/campaign_io.hpp"
#include "fixtures.hpp"
#include "temp_dir.hpp"

using namespace dcflex;
using namespace dcflex::solve;

namespace {

const HighsBackend kBackend;

CellKey max_key(const CampaignConfig& c) {
  return {c.durations_hours[0], c.annual_frequencies[0], c.max_delays[0], std::nullopt};
}

CellKey cost_key(const CampaignConfig& c, double fraction) {
  return {c.durations_hours[0], c.annual_frequencies[0], c.max_delays[0], fraction};
}

// Two days of 15-minute steps split into two daily horizons.
std::vector<prep::Horizon> two_day_horizons(CampaignConfig& c) {
  TimeGrid g;
  g.steps = 96;
  JobTable t;
  t.span = {1, 192};
  for (int d = 0; d < 2; ++d) {
    for (int k = 0; k < 6; ++k) {
      t.jobs.push_back(fixtures::job("d" + std::to_string(d) + "k" + std::to_string(k), d * 96 + 1 + k * 14, 8 + k, 1.0 + k % 3));
    }
  }
  DataCenterSpec spec;
  spec.total_resources = 8;
  spec.unit_power_kw = 0.5;
  spec.preempt_overhead_min = 1.5;
  c.grid = g;
  c.spec = spec;
  c.durations_hours = {0.5, 2};
  c.annual_frequencies = {365, 2920};
  c.max_delays = {0.2, 0.5};
  c.fractions_pct = {0, 50, 100};
  return prep::prepare_horizons(t, spec, g, {0, 0});
}

}  // namespace

TEST(Campaign, TinyAFlexmaxCell) {
  auto p = fixtures::tiny_a();
  auto c = fixtures::single_cell_config(p, 0.25, 365, p.plan);
  auto r = run_flexmax_campaign(fixtures::as_horizons(p), c, kBackend);
  ASSERT_EQ(r.cells.size(), 1u);
  const auto& v = r.cells.at(max_key(c));
  EXPECT_NEAR(v.mean_flex_kw, 2.0, 1e-6);
  EXPECT_NEAR(v.norm_flex, 1.0, 1e-6);
  EXPECT_EQ(v.windows_evaluated, 1);
  EXPECT_EQ(r.kind, CampaignKind::flexmax);
}

TEST(Campaign, TinyACostCells) {
  auto p = fixtures::tiny_a();
  auto c = fixtures::single_cell_config(p, 0.25, 365, p.plan);
  c.fractions_pct = {0, 50, 100};
  auto r = run_costmin_campaign(fixtures::as_horizons(p), c, kBackend);
  ASSERT_EQ(r.cells.size(), 3u);
  const auto& full = r.cells.at(cost_key(c, 100));
  EXPECT_NEAR(full.mean_total_cost, 0.25, 1e-6);
  EXPECT_NEAR(full.acof, 0.5, 1e-6);  // 0.25 USD over 0.25 h * 2 kW
  EXPECT_DOUBLE_EQ(full.aecof, 0.0);
  EXPECT_DOUBLE_EQ(full.acof, full.apcof + full.aecof);
  // Half the target: one job moves off step 1 for 0.125 USD against 0.25 kWh.
  EXPECT_NEAR(r.cells.at(cost_key(c, 50)).acof, 0.5, 1e-6);
  const auto& zero = r.cells.at(cost_key(c, 0));
  EXPECT_TRUE(zero.degenerate);
  EXPECT_DOUBLE_EQ(zero.acof, 0.0);
  EXPECT_FALSE(full.degenerate);
}

TEST(Campaign, TwoHorizonsAveraged) {
  CampaignConfig c;
  auto hs = two_day_horizons(c);
  ASSERT_EQ(hs.size(), 2u);
  auto r = run_flexmax_campaign(hs, c, kBackend);
  EXPECT_EQ(r.cells.size(), 8u);
  EXPECT_EQ(r.horizons, 2);
  for (const auto& [key, v] : r.cells) {
    EXPECT_EQ(v.windows_evaluated, 2);
    EXPECT_EQ(v.horizons_failed, 0) << v.note;
    EXPECT_GE(v.norm_flex, 0.0);
    EXPECT_LE(v.norm_flex, 1.0);
  }
}

TEST(Campaign, MoreDelayNeverLessFlexibility) {
  CampaignConfig c;
  auto hs = two_day_horizons(c);
  auto r = run_flexmax_campaign(hs, c, kBackend);
  for (double d : c.durations_hours) {
    for (double f : c.annual_frequencies) {
      EXPECT_GE(r.cells.at({d, f, 0.5, std::nullopt}).mean_flex_kw + 1e-6, r.cells.at({d, f, 0.2, std::nullopt}).mean_flex_kw);
    }
  }
}

TEST(Campaign, CostInvariantsAndDeterminism) {
  CampaignConfig c;
  auto hs = two_day_horizons(c);
  c.workers = 1;
  auto a = run_costmin_campaign(hs, c, kBackend);
  c.workers = 3;
  auto b = run_costmin_campaign(hs, c, kBackend);
  EXPECT_EQ(campaign_to_json(a), campaign_to_json(b));
  for (const auto& [key, v] : a.cells) {
    EXPECT_DOUBLE_EQ(v.acof, v.apcof + v.aecof);
    EXPECT_DOUBLE_EQ(v.aecof, 0.0);
    EXPECT_GE(v.acof, 0.0);
    if (*key.fraction_pct == 0) EXPECT_TRUE(v.degenerate);
  }
}

TEST(Campaign, ServiceThatDoesNotFitIsReported) {
  CampaignConfig c;
  auto hs = two_day_horizons(c);
  c.durations_hours = {4};
  c.annual_frequencies = {2920};  // 8 windows of 16 steps in 96 steps
  c.max_delays = {0.2};
  auto r = run_flexmax_campaign(hs, c, kBackend);
  const auto& v = r.cells.begin()->second;
  EXPECT_EQ(v.windows_evaluated, 0);
  EXPECT_EQ(v.horizons_failed, 2);
  EXPECT_NE(v.note.find("does not fit"), std::string::npos);
}

TEST(Campaign, BadConfigRejected) {
  CampaignConfig c;
  auto hs = two_day_horizons(c);
  c.fractions_pct = {120};
  EXPECT_THROW(run_costmin_campaign(hs, c, kBackend), DomainError);
  c.fractions_pct = {};
  EXPECT_THROW(run_costmin_campaign(hs, c, kBackend), DomainError);
  c.max_delays = {};
  EXPECT_THROW(run_flexmax_campaign(hs, c, kBackend), DomainError);
}

TEST(Campaign, EchoOmitsWorkers) {
  CampaignConfig c;
  c.workers = 5;
  for (const auto& [k, v] : c.echo()) EXPECT_EQ(k.find("worker"), std::string::npos);
}

TEST(Campaign, ShiftedEnergy) {
  TimeGrid g;
  g.step_minutes = 15;
  EXPECT_DOUBLE_EQ(shifted_energy_kwh(2.0, 3, 4, g), 0.25 * 3 * 4 * 2.0);
}

TEST(CampaignIo, JsonRoundTrip) {
  CampaignConfig c;
  auto hs = two_day_horizons(c);
  c.durations_hours = {0.5};
  auto r = run_costmin_campaign(hs, c, kBackend);
  r.cells.begin()->second.note = "x \"quoted\"";
  auto text = campaign_to_json(r);
  auto back = campaign_from_json(text);
  EXPECT_EQ(campaign_to_json(back), text);
  EXPECT_EQ(back.kind, CampaignKind::costmin);
  EXPECT_EQ(back.cells.size(), r.cells.size());
  EXPECT_DOUBLE_EQ(back.spec.total_resources, 8.0);
  EXPECT_EQ(back.config, r.config);
}

TEST(CampaignIo, CsvRoundTrip) {
  CampaignConfig c;
  auto hs = two_day_horizons(c);
  for (bool cost : {false, true}) {
    auto r = cost ? run_costmin_campaign(hs, c, kBackend) : run_flexmax_campaign(hs, c, kBackend);
    std::ostringstream os;
    write_campaign_csv(r, os);
    auto back = parse_campaign_csv(os.str());
    EXPECT_EQ(back.kind, r.kind);
    ASSERT_EQ(back.cells.size(), r.cells.size());
    for (const auto& [key, v] : r.cells) {
      const auto& w = back.cells.at(key);
      for (const auto& m : cell_metrics()) EXPECT_EQ(cell_metric(w, m), cell_metric(v, m)) << m;
    }
  }
}

TEST(CampaignIo, CsvHeaderAndMetricErrors) {
  CampaignResult r;
  r.cells[{1, 365, 0.1, std::nullopt}] = CellValue{};
  std::ostringstream os;
  write_campaign_csv(r, os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')),
            "duration_hours,annual_frequency,max_delay,flex_fraction,metric,value");
  EXPECT_NE(os.str().find("1,365,0.1,max,norm_flex,0"), std::string::npos);
  EXPECT_THROW(cell_metric(CellValue{}, "bogus"), DomainError);
  EXPECT_THROW(campaign_from_json("{not json"), DataError);
}
