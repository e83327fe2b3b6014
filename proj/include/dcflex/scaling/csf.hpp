#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dcflex/ingest/cloud_pricing.hpp"
#include "dcflex/scaling/scaling.hpp"

namespace dcflex::scaling {

/// One comparison of a faster option against a slower, cheaper one from the
/// same provider.
struct CsfSample {
  std::string provider;
  ingest::DeviceType device_type = ingest::DeviceType::cpu;
  std::string fast_model;
  std::string slow_model;
  std::size_t fast_index = 0;  // into the deduplicated option list
  std::size_t slow_index = 0;
  double delay_frac = 0.0;       // (D2 - D1) / D1
  double cost_reduction = 0.0;   // (V1 - V2) per unit of workload
  double price_reduction_coeff = 0.0;  // A of the fast option
  double unit_price = 0.0;       // R of the fast option
  double unit_power_kw = 0.0;    // G of the fast option
  double csf = 0.0;
};

struct CsfEstimate {
  std::vector<ingest::CloudOption> options;  // after deduplication
  std::vector<CsfSample> samples;
  std::size_t duplicates_removed = 0;
  std::size_t dropped_too_slow = 0;
  std::size_t dropped_slower_and_pricier = 0;
};

/// The slow option needs more than twice the fast option's computing time.
bool excessively_slow(double delay_frac);

/// Drops options that are the same machine rented in portions, keyed on
/// (provider, model, unit price, unit power). The first occurrence is kept.
std::vector<ingest::CloudOption> deduplicate_options(const std::vector<ingest::CloudOption>& options,
                                                     std::size_t* removed = nullptr);

/// Pairs every faster option with every slower one of the same provider and
/// device type. Computing time is 1/speed and an option's price for a fixed
/// workload is time x unit price x unit count. Throws DomainError on an
/// empty table and DataError when no pair survives the filters.
CsfEstimate estimate_csf(const ingest::CloudOptionTable& table, const CostParams& nominal);

std::vector<CsfSample> estimate_csf_samples(const ingest::CloudOptionTable& table, const CostParams& nominal);

/// Inclusive linear-interpolation percentile, p in [0, 100].
double percentile(std::span<const double> samples, double p);

/// CSV `provider,device_type,fast_model,slow_model,A,csf`.
void write_csf_samples(const std::vector<CsfSample>& samples, std::ostream& out);
void write_csf_samples(const std::vector<CsfSample>& samples, const std::filesystem::path& path);

}  // namespace dcflex::scaling
