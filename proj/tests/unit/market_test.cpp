#include <gtest/gtest.h>

#include <sstream>

#include "dcflex/market/profit.hpp"

using namespace dcflex;
using namespace dcflex::market;

namespace {

ingest::PriceSeries series(const std::string& name, std::vector<double> prices) {
  ingest::PriceSeries s;
  s.market = name;
  for (std::size_t i = 0; i < prices.size(); ++i) s.samples.push_back({"t", static_cast<std::int64_t>(i), prices[i]});
  return s;
}

solve::CampaignResult grid(std::vector<double> acofs) {
  solve::CampaignResult r;
  r.kind = solve::CampaignKind::costmin;
  double f = 25;
  for (double a : acofs) {
    solve::CellValue v;
    v.acof = a;
    v.apcof = a;
    v.windows_evaluated = 1;
    v.degenerate = a == 0.0;
    r.cells[{1, 365, 0.2, f}] = v;
    f += 25;
  }
  return r;
}

}  // namespace

TEST(PriceTableTest, Percentiles) {
  auto flat = price_percentile_table(series("dfs", std::vector<double>(10, 3.8)), {50, 99, 100});
  for (const auto& p : flat.points) EXPECT_DOUBLE_EQ(p.price, 3.8);
  auto two = price_percentile_table(series("m", {10, 0}), {100, 50, 50, 0});
  ASSERT_EQ(two.points.size(), 3u);
  EXPECT_DOUBLE_EQ(two.points[0].price, 0);
  EXPECT_DOUBLE_EQ(two.points[1].price, 5);
  EXPECT_DOUBLE_EQ(two.points[2].price, 10);
  EXPECT_THROW(price_percentile_table(series("e", {}), {50}), DomainError);
  EXPECT_THROW(price_percentile_table(series("m", {1}), {150}), DomainError);
}

TEST(Profitability, ThresholdScan) {
  PriceTable t{"fr", "USD", {{50, 0.1}, {99, 0.4}, {99.9, 0.6}, {100, 2.0}}};
  auto r = profitability_report(grid({0.5, 0.0, 5.0}), {t});
  ASSERT_EQ(r.cells.size(), 3u);
  const auto& half = r.cells[0];
  ASSERT_EQ(half.markets.size(), 1u);
  EXPECT_EQ(half.markets[0].min_percentile, 99.9);
  EXPECT_EQ(half.markets[0].profitable, (std::vector<bool>{false, false, true, true}));
  EXPECT_TRUE(r.cells[1].degenerate);
  EXPECT_TRUE(r.cells[1].markets.empty());
  EXPECT_FALSE(r.cells[2].markets[0].min_percentile.has_value());

  std::ostringstream os;
  write_report_text(r, os);
  EXPECT_NE(os.str().find("from P99.9"), std::string::npos);
  EXPECT_NE(os.str().find("not profitable at any observed price"), std::string::npos);
  EXPECT_NE(os.str().find("degenerate"), std::string::npos);

  auto j = report_to_json(r);
  EXPECT_NE(j.find("\"min_profitable_percentile\": 99.9"), std::string::npos);
  EXPECT_NE(j.find("\"min_profitable_percentile\": null"), std::string::npos);
}

TEST(Profitability, PriceEqualToCostIsProfitable) {
  PriceTable t{"m", "USD", {{50, 0.5}}};
  auto r = profitability_report(grid({0.5}), {t});
  EXPECT_EQ(r.cells[0].markets[0].min_percentile, 50.0);
}

TEST(Profitability, Errors) {
  PriceTable gbp{"dfs", "GBP", {{50, 3}}};
  EXPECT_THROW(profitability_report(grid({0.5}), {gbp}), DomainError);
  auto flex = grid({0.5});
  flex.kind = solve::CampaignKind::flexmax;
  EXPECT_THROW(profitability_report(flex, {}), DomainError);
}
