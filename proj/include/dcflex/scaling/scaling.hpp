#pragma once

#include "dcflex/core/types.hpp"
#include "dcflex/solve/campaign.hpp"

namespace dcflex::scaling {

/// Parameters entering the cost scaling factor.
struct CostParams {
  double price_reduction_coeff = 0.5;  // A
  double hourly_unit_price = 1.0;      // R, money per unit-hour
  double unit_power_kw = 1.0;          // G
  double energy_price = 0.05;          // pi, money per kWh
};

/// Normalized flexibility of a data center with fixed power `fixed_power_kw`,
/// from a result computed without fixed power.
double scale_flex_norm(double norm_flex_nominal, double unit_power_kw, double total_resources, double fixed_power_kw);

/// Flexibility in kW from a normalized result computed without fixed power.
double scale_flex_kw(double norm_flex_nominal, double unit_power_kw, double total_resources);

/// (A * R * G_nominal) / (G * A_nominal * R_nominal). Throws DomainError on a
/// zero denominator.
double cost_scaling_factor(const CostParams& target, const CostParams& nominal);

double scale_acof(double acof_nominal, const CostParams& target, const CostParams& nominal);

/// Price part scales with the cost scaling factor, energy part with pi.
double scale_acof_dq(double apcof_nominal, double aecof_nominal, const CostParams& target,
                     const CostParams& nominal);

/// Target data center for rescaling a whole grid.
struct ScaleTarget {
  CostParams cost;
  double total_resources = 1.0;
  double fixed_power_kw = 0.0;
};

/// Nominal parameters stored with a campaign result.
CostParams nominal_params(const solve::CampaignResult& result);

/// Rescales every cell of a grid computed without fixed power. Throws
/// DomainError when the nominal result has fixed power.
solve::CampaignResult scale_campaign(const solve::CampaignResult& nominal, const ScaleTarget& target);

}  // namespace dcflex::scaling
