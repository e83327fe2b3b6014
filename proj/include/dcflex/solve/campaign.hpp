#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcflex/core/types.hpp"
#include "dcflex/model/schedule_model.hpp"
#include "dcflex/prep/preprocess.hpp"
#include "dcflex/solve/backend.hpp"

namespace dcflex::solve {

/// Grid cell: service, delay limit and, for cost grids, the flexibility
/// fraction in percent.
struct CellKey {
  double duration_hours = 0.0;
  double annual_frequency = 0.0;
  double max_delay = 0.0;
  std::optional<double> fraction_pct;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

/// Horizon averages for one cell.
struct CellValue {
  double mean_flex_kw = 0.0;  // flexmax optimum, or the cost target
  double norm_flex = 0.0;
  double acof = 0.0;          // apcof + aecof
  double apcof = 0.0;
  double aecof = 0.0;
  double mean_total_cost = 0.0;
  int windows_evaluated = 0;  // horizons contributing to the averages
  int horizons_failed = 0;
  int limit_hits = 0;         // solves stopped by the time limit
  double max_mip_gap = 0.0;
  bool degenerate = false;    // every evaluated horizon had a zero target
  std::string note;           // first failure message, if any
};

enum class CampaignKind { flexmax, costmin };

std::string to_string(CampaignKind kind);

struct CampaignResult {
  CampaignKind kind = CampaignKind::flexmax;
  DataCenterSpec spec;
  EconParams econ;
  model::DqParams dq;
  int horizons = 0;
  std::vector<std::pair<std::string, std::string>> config;  // resolved settings, in order
  std::map<CellKey, CellValue> cells;
};

struct CampaignConfig {
  TimeGrid grid;
  DataCenterSpec spec;
  EconParams econ;
  model::DqParams dq;
  std::vector<double> durations_hours{0.25, 0.5, 1, 2, 4};
  std::vector<double> annual_frequencies{365, 730, 1460, 2920};
  std::vector<double> max_delays{0.1, 0.2, 0.5};
  std::vector<double> fractions_pct{25, 50, 75, 100};
  std::uint64_t master_seed = 1;
  int workers = 0;  // 0 = hardware concurrency; never affects results
  SolverOptions solver;
  bool tighten = true;

  /// Settings that determine the results, as ordered key/value text.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Maximum flexibility for every (duration, frequency, delay) cell, averaged
/// over horizons. One activation sample per (horizon, service), shared by
/// all delays.
CampaignResult run_flexmax_campaign(const std::vector<prep::Horizon>& horizons, const CampaignConfig& config,
                                    const SolverBackend& backend);

/// Average cost of delivering each fraction of the per-horizon maximum
/// flexibility. Uses the same activation samples as the flexmax campaign.
CampaignResult run_costmin_campaign(const std::vector<prep::Horizon>& horizons, const CampaignConfig& config,
                                    const SolverBackend& backend);

/// Seed of the activation sample for one horizon and service.
std::uint64_t activation_seed(std::uint64_t master_seed, int horizon_index, double duration_hours,
                              double annual_frequency);

/// Shifted energy (kWh) behind a flexibility amount held over a plan.
double shifted_energy_kwh(double flex_kw, int window_count, int duration_steps, const TimeGrid& grid);

}  // namespace dcflex::solve
