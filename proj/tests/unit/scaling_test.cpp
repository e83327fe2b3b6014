#include <gtest/gtest.h>

#include "campaign_fixtures.hpp"
#include "dcflex/scaling/scaling.hpp"
#include "dcflex/solve/campaign.hpp"
#include "fixtures.hpp"

using namespace dcflex;
using namespace dcflex::scaling;

TEST(ScaleFlex, NormAndKw) {
  EXPECT_DOUBLE_EQ(scale_flex_norm(0.4, 1, 100, 0), 0.4);
  EXPECT_DOUBLE_EQ(scale_flex_norm(0.4, 1, 100, 100), 0.2);
  EXPECT_DOUBLE_EQ(scale_flex_kw(0.4, 0.5, 100), 20.0);
  EXPECT_DOUBLE_EQ(scale_flex_kw(1.0, 1, 2), 2.0);
  EXPECT_THROW(scale_flex_norm(0.4, 0, 0, 0), DomainError);
}

TEST(CostScaling, Factor) {
  CostParams nominal;
  EXPECT_DOUBLE_EQ(cost_scaling_factor(nominal, nominal), 1.0);
  CostParams t{1.0, 2.0, 1.0, 0.05};
  EXPECT_DOUBLE_EQ(cost_scaling_factor(t, nominal), 4.0);
  t = {0.5, 1.0, 2.0, 0.05};
  EXPECT_DOUBLE_EQ(scale_acof(0.5, t, nominal), 0.25);
  t.unit_power_kw = 0;
  EXPECT_THROW(cost_scaling_factor(t, nominal), DomainError);
}

TEST(CostScaling, DynamicQuotaParts) {
  CostParams nominal;
  EXPECT_DOUBLE_EQ(scale_acof_dq(0.3, 0.05, nominal, nominal), 0.35);
  CostParams t = nominal;
  t.energy_price = 0.1;
  EXPECT_DOUBLE_EQ(scale_acof_dq(0.3, 0.05, t, nominal), 0.4);
  // Price part fixed, energy part linear in pi.
  EXPECT_DOUBLE_EQ(scale_acof_dq(0.0, 0.05, t, nominal), 0.1);
  CostParams zero = nominal;
  zero.energy_price = 0;
  EXPECT_THROW(scale_acof_dq(0.3, 0.05, t, zero), DomainError);
}

TEST(ScaleCampaign, CellsFollowFormulas) {
  solve::CampaignResult r;
  r.kind = solve::CampaignKind::costmin;
  r.spec.total_resources = 2;
  r.spec.unit_power_kw = 1;
  r.dq.enabled = true;
  solve::CellValue v;
  v.norm_flex = 0.5;
  v.mean_flex_kw = 1.0;
  v.apcof = 0.4;
  v.aecof = 0.05;
  v.acof = 0.45;
  v.mean_total_cost = 3.0;
  r.cells[{1, 365, 0.2, 100.0}] = v;
  ScaleTarget t{{1.0, 2.0, 0.25, 0.1}, 64, 16};
  auto s = scale_campaign(r, t);
  const auto& w = s.cells.begin()->second;
  EXPECT_DOUBLE_EQ(w.norm_flex, 0.5 * 16 / 32);
  EXPECT_DOUBLE_EQ(w.mean_flex_kw, 0.5 * 0.25 * 64);
  EXPECT_DOUBLE_EQ(w.apcof, 0.4 * (1.0 * 2.0 * 1.0) / (0.25 * 0.5 * 1.0));
  EXPECT_DOUBLE_EQ(w.aecof, 0.1);
  EXPECT_DOUBLE_EQ(w.acof, w.apcof + w.aecof);
  EXPECT_DOUBLE_EQ(w.mean_total_cost, 3.0 * (1.0 * 2.0 * 64) / (0.5 * 1.0 * 2));
  EXPECT_DOUBLE_EQ(s.spec.total_resources, 64);
  EXPECT_EQ(s.config.back().first, "cost_scaling_factor");
  r.spec.fixed_power_kw = 1;
  EXPECT_THROW(scale_campaign(r, t), DomainError);
}

TEST(ScaleCampaign, TinyARescaledMatchesResolve) {
  const solve::HighsBackend backend;
  auto p = fixtures::tiny_a();
  auto c = fixtures::single_cell_config(p, 0.25, 365, p.plan);
  auto nominal = solve::run_costmin_campaign(fixtures::as_horizons(p), c, backend);

  // Doubling G and holding the jobs fixed doubles the flexibility and halves ACoF.
  auto q = p;
  q.spec.unit_power_kw = 2;
  q.baseline = prep::baseline_profile(q.jobs, q.spec, q.grid);
  auto c2 = c;
  c2.spec = q.spec;
  auto resolved = solve::run_costmin_campaign(fixtures::as_horizons(q), c2, backend);
  auto scaled = scale_campaign(nominal, {{0.5, 1.0, 2.0, 0.05}, 2, 0});
  const auto& a = resolved.cells.begin()->second;
  const auto& b = scaled.cells.begin()->second;
  EXPECT_NEAR(a.mean_flex_kw, b.mean_flex_kw, 1e-9 * a.mean_flex_kw);
  EXPECT_NEAR(a.acof, b.acof, 1e-9 * a.acof);
  EXPECT_NEAR(a.acof, 0.25, 1e-6);
}
