#pragma once

#include <span>
#include <vector>

#include "dcflex/core/types.hpp"

namespace dcflex::prep {

/// Pearson correlation coefficient. Throws DomainError for mismatched or
/// too-short inputs and for zero-variance columns.
double pearson(std::span<const double> x, std::span<const double> y);

/// Flexibility/cost outcome of one data center for one service.
struct FlexCostResult {
  double norm_flex = 0.0;
  double acof = 0.0;
};

/// Correlations between utilization statistics and outcomes across data centers.
struct CorrelationTable {
  double mean_util_vs_flex = 0.0;
  double mean_util_vs_acof = 0.0;
  double std_util_vs_flex = 0.0;
  double std_util_vs_acof = 0.0;
};

/// Needs at least three data centers, one profile per result.
CorrelationTable utilization_stats(std::span<const BaselineProfile> profiles, std::span<const FlexCostResult> results);

}  // namespace dcflex::prep
