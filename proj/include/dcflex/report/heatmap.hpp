#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dcflex/solve/campaign.hpp"

namespace dcflex::report {

/// One heatmap: duration (x) by frequency (y) for a fixed delay limit and,
/// for cost grids, a fixed flexibility fraction.
struct Panel {
  double max_delay = 0.0;
  std::optional<double> fraction_pct;
  std::vector<double> durations;    // columns, ascending
  std::vector<double> frequencies;  // rows, ascending
  std::vector<std::vector<std::optional<double>>> values;  // [row][column]; empty when no horizon was evaluated
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

/// Splits a grid into panels for `metric` (see solve::cell_metrics). Throws
/// DomainError for an unknown metric or an empty grid.
std::vector<Panel> make_panels(const solve::CampaignResult& grid, const std::string& metric);

/// Standalone SVG with one rectangle and label per cell, colored linearly
/// from the panel minimum to its maximum.
std::string render_svg(const Panel& panel, const std::string& metric);

struct HeatmapFiles {
  std::filesystem::path csv;
  std::vector<std::filesystem::path> svgs;
};

/// Writes `<prefix>.csv` (the whole grid in long form) and one
/// `<prefix>_<metric>_delay<d>[_frac<f>].svg` per panel.
HeatmapFiles heatmap_export(const solve::CampaignResult& grid, const std::string& metric,
                            const std::filesystem::path& out_prefix);

}  // namespace dcflex::report
