#include "dcflex/scaling/scaling.hpp"

#include "dcflex/core/text.hpp"

namespace dcflex::scaling {

double scale_flex_norm(double norm_flex_nominal, double unit_power_kw, double total_resources,
                       double fixed_power_kw) {
  const double dynamic = unit_power_kw * total_resources;
  if (!(dynamic + fixed_power_kw > 0.0)) throw DomainError("data center power must be positive");
  return norm_flex_nominal * dynamic / (dynamic + fixed_power_kw);
}

double scale_flex_kw(double norm_flex_nominal, double unit_power_kw, double total_resources) {
  return norm_flex_nominal * unit_power_kw * total_resources;
}

double cost_scaling_factor(const CostParams& t, const CostParams& n) {
  const double den = t.unit_power_kw * n.price_reduction_coeff * n.hourly_unit_price;
  if (den == 0.0) throw DomainError("cost scaling factor needs non-zero G, nominal A and nominal R");
  return t.price_reduction_coeff * t.hourly_unit_price * n.unit_power_kw / den;
}

double scale_acof(double acof_nominal, const CostParams& target, const CostParams& nominal) {
  return acof_nominal * cost_scaling_factor(target, nominal);
}

double scale_acof_dq(double apcof_nominal, double aecof_nominal, const CostParams& target,
                     const CostParams& nominal) {
  if (nominal.energy_price == 0.0) throw DomainError("nominal energy price must be non-zero");
  return apcof_nominal * cost_scaling_factor(target, nominal) +
         aecof_nominal * target.energy_price / nominal.energy_price;
}

CostParams nominal_params(const solve::CampaignResult& r) {
  return {r.econ.price_reduction_coeff, r.econ.hourly_unit_price, r.spec.unit_power_kw, r.econ.energy_price};
}

solve::CampaignResult scale_campaign(const solve::CampaignResult& nominal, const ScaleTarget& target) {
  if (nominal.spec.fixed_power_kw != 0.0) {
    throw DomainError("only grids computed without fixed power can be rescaled");
  }
  if (!(target.total_resources > 0.0) || !(target.cost.unit_power_kw > 0.0) || target.fixed_power_kw < 0.0) {
    throw DomainError("target needs positive resources and unit power and non-negative fixed power");
  }
  const CostParams base = nominal_params(nominal);
  const double factor = cost_scaling_factor(target.cost, base);
  const double energy_factor = base.energy_price == 0.0 ? 0.0 : target.cost.energy_price / base.energy_price;
  if (nominal.dq.enabled && base.energy_price == 0.0) throw DomainError("nominal energy price must be non-zero");
  // Total cost follows A * R * N with the job set scaled to the new size.
  const double cost_factor = target.cost.price_reduction_coeff * target.cost.hourly_unit_price *
                             target.total_resources /
                             (base.price_reduction_coeff * base.hourly_unit_price * nominal.spec.total_resources);

  solve::CampaignResult out = nominal;
  out.spec.unit_power_kw = target.cost.unit_power_kw;
  out.spec.total_resources = target.total_resources;
  out.spec.fixed_power_kw = target.fixed_power_kw;
  out.econ.price_reduction_coeff = target.cost.price_reduction_coeff;
  out.econ.hourly_unit_price = target.cost.hourly_unit_price;
  out.econ.energy_price = target.cost.energy_price;
  for (auto& [key, cell] : out.cells) {
    const double norm = cell.norm_flex;
    cell.norm_flex = scale_flex_norm(norm, target.cost.unit_power_kw, target.total_resources, target.fixed_power_kw);
    cell.mean_flex_kw = scale_flex_kw(norm, target.cost.unit_power_kw, target.total_resources);
    cell.apcof *= factor;
    cell.aecof *= energy_factor;
    cell.acof = cell.apcof + cell.aecof;
    cell.mean_total_cost *= cost_factor;
  }
  out.config.emplace_back("scaled_unit_power_kw", format_number(target.cost.unit_power_kw));
  out.config.emplace_back("scaled_total_resources", format_number(target.total_resources));
  out.config.emplace_back("scaled_fixed_power_kw", format_number(target.fixed_power_kw));
  out.config.emplace_back("scaled_price_reduction_coeff", format_number(target.cost.price_reduction_coeff));
  out.config.emplace_back("scaled_hourly_unit_price", format_number(target.cost.hourly_unit_price));
  out.config.emplace_back("scaled_energy_price", format_number(target.cost.energy_price));
  out.config.emplace_back("cost_scaling_factor", format_number(factor));
  return out;
}

}  // namespace dcflex::scaling
