#include "dcflex/prep/stats.hpp"

#include <algorithm>
#include <cmath>

namespace dcflex::prep {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("correlation inputs differ in length");
  if (x.size() < 2) throw DomainError("correlation needs at least two pairs");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) throw DomainError("zero-variance column in correlation");
  double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

CorrelationTable utilization_stats(std::span<const BaselineProfile> profiles,
                                   std::span<const FlexCostResult> results) {
  if (profiles.size() != results.size()) throw DomainError("one result per profile required");
  if (profiles.size() < 3) throw DomainError("correlation analysis needs at least three data centers");
  std::vector<double> mean_u, std_u, flex, acof;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    mean_u.push_back(profiles[i].mean_util);
    std_u.push_back(profiles[i].std_util);
    flex.push_back(results[i].norm_flex);
    acof.push_back(results[i].acof);
  }
  return {pearson(mean_u, flex), pearson(mean_u, acof), pearson(std_u, flex), pearson(std_u, acof)};
}

}  // namespace dcflex::prep
