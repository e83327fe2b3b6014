#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dcflex/solve/campaign.hpp"

namespace dcflex::solve {

/// JSON with cells nested as cells[duration][frequency][delay][fraction],
/// where the fraction key is "max" for flexibility grids.
std::string campaign_to_json(const CampaignResult& result);
CampaignResult campaign_from_json(const std::string& text);

void write_campaign_json(const CampaignResult& result, const std::filesystem::path& path);
CampaignResult read_campaign_json(const std::filesystem::path& path);

/// Long CSV `duration_hours,annual_frequency,max_delay,flex_fraction,metric,value`.
void write_campaign_csv(const CampaignResult& result, std::ostream& out);
void write_campaign_csv(const CampaignResult& result, const std::filesystem::path& path);

/// Rebuilds the cells of a long CSV. Nominal parameters and config are not
/// part of the CSV and keep their defaults.
CampaignResult read_campaign_csv(const std::filesystem::path& path);
CampaignResult parse_campaign_csv(const std::string& text);

/// Numeric cell metrics in CSV order.
const std::vector<std::string>& cell_metrics();
double cell_metric(const CellValue& cell, const std::string& metric);

}  // namespace dcflex::solve
