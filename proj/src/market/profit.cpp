#include "dcflex/market/profit.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dcflex/core/text.hpp"
#include "dcflex/scaling/csf.hpp"
#include "json.hpp"

namespace dcflex::market {
namespace {

std::string key_text(const solve::CellKey& k) {
  std::string s = format_number(k.duration_hours) + "h/" + format_number(k.annual_frequency) + "yr/d" +
                  format_number(k.max_delay);
  if (k.fraction_pct) s += "/" + format_number(*k.fraction_pct) + "%";
  return s;
}

}  // namespace

PriceTable price_percentile_table(const ingest::PriceSeries& series, const std::vector<double>& percentiles) {
  if (series.samples.empty()) throw DomainError("price series '" + series.market + "' is empty");
  std::vector<double> prices;
  prices.reserve(series.samples.size());
  for (const auto& s : series.samples) prices.push_back(s.price);
  std::vector<double> ps = percentiles;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  PriceTable table{series.market, series.currency, {}};
  for (double p : ps) table.points.push_back({p, scaling::percentile(prices, p)});
  return table;
}

ProfitReport profitability_report(const solve::CampaignResult& grid, const std::vector<PriceTable>& prices,
                                  const std::string& grid_currency) {
  for (const auto& t : prices) {
    if (t.currency != grid_currency) {
      throw DomainError("market '" + t.market + "' is priced in " + t.currency + ", costs are in " + grid_currency);
    }
  }
  if (grid.kind != solve::CampaignKind::costmin) throw DomainError("profitability needs a cost grid");
  ProfitReport report{grid_currency, prices, {}};
  for (const auto& [key, cell] : grid.cells) {
    CellVerdict v;
    v.key = key;
    v.acof = cell.acof;
    v.degenerate = cell.degenerate || cell.windows_evaluated == 0;
    if (!v.degenerate) {
      for (const auto& t : prices) {
        MarketVerdict m{t.market, {}, std::nullopt};
        for (const auto& pt : t.points) {
          bool ok = pt.price >= cell.acof;
          m.profitable.push_back(ok);
          if (ok && !m.min_percentile) m.min_percentile = pt.percentile;
        }
        v.markets.push_back(std::move(m));
      }
    }
    report.cells.push_back(std::move(v));
  }
  return report;
}

std::string report_to_json(const ProfitReport& r) {
  using json = nlohmann::ordered_json;
  json root;
  root["currency"] = r.currency;
  root["prices"] = json::array();
  for (const auto& t : r.prices) {
    json jt;
    jt["market"] = t.market;
    jt["currency"] = t.currency;
    jt["percentiles"] = json::array();
    for (const auto& p : t.points) jt["percentiles"].push_back({{"percentile", p.percentile}, {"price", p.price}});
    root["prices"].push_back(std::move(jt));
  }
  root["cells"] = json::array();
  for (const auto& c : r.cells) {
    json jc;
    jc["duration_hours"] = c.key.duration_hours;
    jc["annual_frequency"] = c.key.annual_frequency;
    jc["max_delay"] = c.key.max_delay;
    if (c.key.fraction_pct) jc["flex_fraction"] = *c.key.fraction_pct;
    jc["acof"] = c.acof;
    jc["degenerate"] = c.degenerate;
    jc["markets"] = json::array();
    for (const auto& m : c.markets) {
      json jm;
      jm["market"] = m.market;
      jm["min_profitable_percentile"] = m.min_percentile ? json(*m.min_percentile) : json(nullptr);
      jm["profitable"] = m.profitable;
      jc["markets"].push_back(std::move(jm));
    }
    root["cells"].push_back(std::move(jc));
  }
  return root.dump(2) + "\n";
}

void write_report_text(const ProfitReport& r, std::ostream& out) {
  for (const auto& t : r.prices) {
    out << "market " << t.market << " (" << t.currency << "/kWh)\n";
    for (const auto& p : t.points) out << "  P" << format_number(p.percentile) << "  " << format_number(p.price) << "\n";
  }
  out << "\n" << std::left << std::setw(28) << "cell" << std::setw(14) << "ACoF";
  for (const auto& t : r.prices) out << std::setw(38) << t.market;
  out << "\n";
  for (const auto& c : r.cells) {
    out << std::setw(28) << key_text(c.key) << std::setw(14) << format_number(c.acof);
    if (c.degenerate) {
      out << "degenerate (no cost to compare)\n";
      continue;
    }
    for (const auto& m : c.markets) {
      out << std::setw(38) << (m.min_percentile ? "from P" + format_number(*m.min_percentile) : "not profitable at any observed price");
    }
    out << "\n";
  }
}

}  // namespace dcflex::market
