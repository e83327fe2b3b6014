#include "dcflex/solve/campaign.hpp"

#include <algorithm>

#include "dcflex/core/rng.hpp"
#include "dcflex/core/text.hpp"
#include "dcflex/solve/activation.hpp"
#include "dcflex/solve/solve.hpp"
#include "dcflex/solve/worker_pool.hpp"

namespace dcflex::solve {
namespace {

constexpr double kTargetBackoff = 1e-7;

struct Service {
  double duration_hours = 0.0;
  double annual_frequency = 0.0;
  std::optional<ServiceSpec> spec;
  std::string error;
};

struct Outcome {
  bool ok = false;
  bool degenerate = false;
  bool limit = false;
  double flex_kw = 0.0;
  double total_cost = 0.0;
  double apcof = 0.0;
  double aecof = 0.0;
  double mip_gap = 0.0;
  std::string error;
};

std::string list_text(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_number(values[i]);
  return s;
}

void check_config(const CampaignConfig& c, bool need_fractions) {
  c.grid.validate();
  c.spec.validate();
  c.econ.validate();
  c.dq.validate();
  if (c.durations_hours.empty() || c.annual_frequencies.empty() || c.max_delays.empty()) {
    throw DomainError("campaign grid needs at least one duration, frequency and delay");
  }
  for (double d : c.max_delays) {
    if (!(d >= 0.0)) throw DomainError("delay limits must be non-negative");
  }
  if (need_fractions) {
    if (c.fractions_pct.empty()) throw DomainError("cost campaign needs at least one flexibility fraction");
    for (double f : c.fractions_pct) {
      if (!(f >= 0.0 && f <= 100.0)) throw DomainError("flexibility fractions must lie in [0, 100] percent");
    }
  }
}

// Shared state of one campaign: services, activation plans and baselines.
struct Setup {
  std::vector<Service> services;
  std::vector<std::vector<ActivationPlan>> plans;  // [horizon][service]
  std::vector<BaselineProfile> baselines;
};

Setup make_setup(const std::vector<prep::Horizon>& horizons, const CampaignConfig& c) {
  Setup s;
  for (double dur : c.durations_hours) {
    for (double freq : c.annual_frequencies) {
      Service svc{dur, freq, std::nullopt, {}};
      try {
        svc.spec = ServiceSpec::make(dur, freq, c.grid);
      } catch (const Error& e) {
        svc.error = e.what();
      }
      s.services.push_back(std::move(svc));
    }
  }
  for (const auto& hz : horizons) {
    std::vector<ActivationPlan> row;
    for (const auto& svc : s.services) {
      if (!svc.spec) {
        row.emplace_back();
        continue;
      }
      const std::uint64_t seed = activation_seed(c.master_seed, hz.index, svc.duration_hours, svc.annual_frequency);
      row.push_back(sample_activations(c.grid, svc.spec->window_count, svc.spec->duration_steps, seed));
    }
    s.plans.push_back(std::move(row));
    s.baselines.push_back(prep::baseline_profile(hz.jobs, c.spec, c.grid));
  }
  return s;
}

model::ScheduleProblem make_problem(const prep::Horizon& hz, const BaselineProfile& baseline,
                                    const ActivationPlan& plan, const CampaignConfig& c, double max_delay) {
  model::ScheduleProblem p;
  p.jobs = hz.jobs;
  p.spec = c.spec;
  p.spec.max_delay_frac = max_delay;
  p.baseline = baseline;
  p.plan = plan;
  p.grid = c.grid;
  p.dq = c.dq;
  return p;
}

Outcome run_flexmax(const model::ScheduleProblem& p, const SolverBackend& backend, const SolverOptions& options) {
  Outcome o;
  try {
    ScheduleResult r = solve(model::build_flexmax(p), backend, options);
    if (!r.has_solution) {
      o.error = to_string(r.status) + ": " + r.diagnostics;
      return o;
    }
    o.ok = true;
    o.limit = r.status == SolveStatus::limit;
    o.flex_kw = std::max(0.0, r.solution.mean_flex_kw);
  } catch (const Error& e) {
    o.error = e.what();
  }
  return o;
}

Outcome run_costmin(const model::ScheduleProblem& p, const CampaignConfig& c, double target_kw, bool may_back_off,
                    double zero_delay_flex_kw, const SolverBackend& backend) {
  Outcome o;
  o.flex_kw = target_kw;
  if (!(target_kw > 0.0)) {
    o.ok = true;
    o.degenerate = true;
    return o;
  }
  try {
    model::CostminOptions opts;
    opts.tighten = c.tighten;
    opts.zero_delay_flex_kw = zero_delay_flex_kw;
    opts.target_kw = target_kw;
    ScheduleResult r = solve(model::build_costmin(p, c.econ, opts), backend, c.solver);
    if (r.status == SolveStatus::infeasible && may_back_off) {
      // The maximum itself can sit a rounding error beyond reach.
      opts.target_kw = target_kw * (1.0 - kTargetBackoff);
      r = solve(model::build_costmin(p, c.econ, opts), backend, c.solver);
    }
    if (!r.has_solution) {
      o.error = to_string(r.status) + ": " + r.diagnostics;
      return o;
    }
    o.ok = true;
    o.limit = r.status == SolveStatus::limit;
    o.mip_gap = r.mip_gap;
    o.total_cost = r.solution.total_cost;
    const double energy =
        shifted_energy_kwh(target_kw, static_cast<int>(p.plan.count()), p.plan.duration_steps(), p.grid);
    o.apcof = r.solution.total_cost / energy;
    o.aecof = p.dq.enabled ? r.solution.extra_energy_cost / energy : 0.0;
  } catch (const Error& e) {
    o.error = e.what();
  }
  return o;
}

CellValue reduce(const std::vector<const Outcome*>& outcomes, const DataCenterSpec& spec, bool cost) {
  CellValue v;
  int nondegenerate = 0;
  int evaluated = 0;
  double flex = 0.0, apcof = 0.0, aecof = 0.0, total = 0.0;
  for (const Outcome* o : outcomes) {
    if (!o->ok) {
      ++v.horizons_failed;
      if (v.note.empty()) v.note = o->error;
      continue;
    }
    ++evaluated;
    if (o->limit) ++v.limit_hits;
    v.max_mip_gap = std::max(v.max_mip_gap, o->mip_gap);
    flex += o->flex_kw;
    if (cost && !o->degenerate) {
      ++nondegenerate;
      apcof += o->apcof;
      aecof += o->aecof;
      total += o->total_cost;
    }
  }
  v.windows_evaluated = evaluated;
  if (evaluated > 0) {
    v.mean_flex_kw = flex / evaluated;
    v.norm_flex = std::clamp(v.mean_flex_kw / spec.max_power_kw(), 0.0, 1.0);
  }
  if (cost) {
    if (nondegenerate > 0) {
      v.apcof = apcof / nondegenerate;
      v.aecof = aecof / nondegenerate;
      v.mean_total_cost = total / nondegenerate;
    }
    v.acof = v.apcof + v.aecof;
    v.degenerate = evaluated > 0 && nondegenerate == 0;
  }
  return v;
}

CampaignResult make_result(CampaignKind kind, const std::vector<prep::Horizon>& horizons, const CampaignConfig& c) {
  CampaignResult result;
  result.kind = kind;
  result.spec = c.spec;
  result.econ = c.econ;
  result.dq = c.dq;
  result.horizons = static_cast<int>(horizons.size());
  result.config = c.echo();
  return result;
}

}  // namespace

std::string to_string(CampaignKind kind) { return kind == CampaignKind::flexmax ? "flexmax" : "costmin"; }

std::uint64_t activation_seed(std::uint64_t master_seed, int horizon_index, double duration_hours,
                              double annual_frequency) {
  const std::string key = "d=" + format_number(duration_hours) + ";f=" + format_number(annual_frequency);
  return derive_seed(master_seed, static_cast<std::uint64_t>(horizon_index), key);
}

double shifted_energy_kwh(double flex_kw, int window_count, int duration_steps, const TimeGrid& grid) {
  return grid.step_hours() * window_count * duration_steps * flex_kw;
}

std::vector<std::pair<std::string, std::string>> CampaignConfig::echo() const {
  return {
      {"step_minutes", format_number(grid.step_minutes)},
      {"horizon_steps", std::to_string(grid.steps)},
      {"total_resources", format_number(spec.total_resources)},
      {"unit_power_kw", format_number(spec.unit_power_kw)},
      {"fixed_power_kw", format_number(spec.fixed_power_kw)},
      {"preempt_overhead_min", format_number(spec.preempt_overhead_min)},
      {"preempt_budget_frac", format_number(spec.preempt_budget_frac)},
      {"device_class", to_string(spec.device_class)},
      {"price_reduction_coeff", format_number(econ.price_reduction_coeff)},
      {"hourly_unit_price", format_number(econ.hourly_unit_price)},
      {"energy_price", format_number(econ.energy_price)},
      {"dq_enabled", dq.enabled ? "true" : "false"},
      {"dq_speedup", format_number(dq.speedup)},
      {"durations_hours", list_text(durations_hours)},
      {"annual_frequencies", list_text(annual_frequencies)},
      {"max_delays", list_text(max_delays)},
      {"fractions_pct", list_text(fractions_pct)},
      {"master_seed", std::to_string(master_seed)},
      {"mip_rel_gap", format_number(solver.mip_rel_gap)},
      {"mip_abs_gap", format_number(solver.mip_abs_gap)},
      {"time_limit_s", format_number(solver.time_limit_s)},
      {"tighten", tighten ? "true" : "false"},
  };
}

CampaignResult run_flexmax_campaign(const std::vector<prep::Horizon>& horizons, const CampaignConfig& c,
                                    const SolverBackend& backend) {
  check_config(c, false);
  const Setup setup = make_setup(horizons, c);
  const std::size_t H = horizons.size(), S = setup.services.size(), L = c.max_delays.size();
  std::vector<Outcome> outcomes(H * S * L);
  parallel_for(outcomes.size(), c.workers, [&](std::size_t i) {
    const std::size_t h = i / (S * L), s = (i / L) % S, l = i % L;
    if (!setup.services[s].spec) {
      outcomes[i].error = setup.services[s].error;
      return;
    }
    auto p = make_problem(horizons[h], setup.baselines[h], setup.plans[h][s], c, c.max_delays[l]);
    outcomes[i] = run_flexmax(p, backend, c.solver);
  });

  CampaignResult result = make_result(CampaignKind::flexmax, horizons, c);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t l = 0; l < L; ++l) {
      std::vector<const Outcome*> cell;
      for (std::size_t h = 0; h < H; ++h) cell.push_back(&outcomes[(h * S + s) * L + l]);
      CellKey key{setup.services[s].duration_hours, setup.services[s].annual_frequency, c.max_delays[l], std::nullopt};
      result.cells[key] = reduce(cell, c.spec, false);
    }
  }
  return result;
}

CampaignResult run_costmin_campaign(const std::vector<prep::Horizon>& horizons, const CampaignConfig& c,
                                    const SolverBackend& backend) {
  check_config(c, true);
  const Setup setup = make_setup(horizons, c);
  const std::size_t H = horizons.size(), S = setup.services.size(), L = c.max_delays.size(),
                    F = c.fractions_pct.size();

  std::vector<Outcome> maxima(H * S * L);
  parallel_for(maxima.size(), c.workers, [&](std::size_t i) {
    const std::size_t h = i / (S * L), s = (i / L) % S, l = i % L;
    if (!setup.services[s].spec) {
      maxima[i].error = setup.services[s].error;
      return;
    }
    auto p = make_problem(horizons[h], setup.baselines[h], setup.plans[h][s], c, c.max_delays[l]);
    maxima[i] = run_flexmax(p, backend, c.solver);
  });

  // Flexibility without delay, which tightens dynamic-quota cost models.
  std::vector<double> zero_delay(H * S, -1.0);
  if (c.dq.enabled && c.tighten) {
    parallel_for(zero_delay.size(), c.workers, [&](std::size_t i) {
      const std::size_t h = i / S, s = i % S;
      if (!setup.services[s].spec) return;
      auto p = make_problem(horizons[h], setup.baselines[h], setup.plans[h][s], c, 0.0);
      Outcome o = run_flexmax(p, backend, c.solver);
      // A limit-stopped solve only gives a lower bound on this maximum.
      if (o.ok && !o.limit) zero_delay[i] = o.flex_kw;
    });
  }

  std::vector<Outcome> costs(H * S * L * F);
  parallel_for(costs.size(), c.workers, [&](std::size_t i) {
    const std::size_t hsl = i / F, f = i % F;
    const std::size_t h = hsl / (S * L), s = (hsl / L) % S, l = hsl % L;
    const Outcome& max = maxima[hsl];
    if (!max.ok) {
      costs[i].error = max.error;
      return;
    }
    const double fraction = c.fractions_pct[f] / 100.0;
    auto p = make_problem(horizons[h], setup.baselines[h], setup.plans[h][s], c, c.max_delays[l]);
    costs[i] = run_costmin(p, c, fraction * max.flex_kw, fraction >= 1.0, zero_delay[h * S + s], backend);
  });

  CampaignResult result = make_result(CampaignKind::costmin, horizons, c);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t l = 0; l < L; ++l) {
      for (std::size_t f = 0; f < F; ++f) {
        std::vector<const Outcome*> cell;
        for (std::size_t h = 0; h < H; ++h) cell.push_back(&costs[((h * S + s) * L + l) * F + f]);
        CellKey key{setup.services[s].duration_hours, setup.services[s].annual_frequency, c.max_delays[l],
                    c.fractions_pct[f]};
        result.cells[key] = reduce(cell, c.spec, true);
      }
    }
  }
  return result;
}

}  // namespace dcflex::solve
