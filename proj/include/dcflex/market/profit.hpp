#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcflex/ingest/price_series.hpp"
#include "dcflex/solve/campaign.hpp"

namespace dcflex::market {

struct PricePoint {
  double percentile = 0.0;
  double price = 0.0;
};

/// Price percentiles of one market, ascending by percentile.
struct PriceTable {
  std::string market;
  std::string currency;
  std::vector<PricePoint> points;
};

/// Throws DomainError for an empty series or a percentile outside [0, 100].
PriceTable price_percentile_table(const ingest::PriceSeries& series, const std::vector<double>& percentiles);

struct MarketVerdict {
  std::string market;
  std::vector<bool> profitable;              // per price point
  std::optional<double> min_percentile;      // lowest profitable percentile
};

struct CellVerdict {
  solve::CellKey key;
  double acof = 0.0;
  bool degenerate = false;  // no cost to compare; excluded from verdicts
  std::vector<MarketVerdict> markets;
};

struct ProfitReport {
  std::string currency;
  std::vector<PriceTable> prices;
  std::vector<CellVerdict> cells;
};

/// A cell is profitable at a price point when price >= ACoF. Throws
/// DomainError when a price table's currency differs from `grid_currency`,
/// and when the grid holds no cost cells.
ProfitReport profitability_report(const solve::CampaignResult& grid, const std::vector<PriceTable>& prices,
                                  const std::string& grid_currency = "USD");

std::string report_to_json(const ProfitReport& report);
void write_report_text(const ProfitReport& report, std::ostream& out);

}  // namespace dcflex::market
