#pragma once

#include <stdexcept>
#include <vector>

#include "dcflex/model/schedule_model.hpp"
#include "dcflex/prep/preprocess.hpp"
#include "dcflex/solve/activation.hpp"
#include "dcflex/solve/campaign.hpp"

namespace fixtures {

/// One-horizon dataset holding a fixture's jobs.
inline std::vector<dcflex::prep::Horizon> as_horizons(const dcflex::model::ScheduleProblem& p) {
  dcflex::prep::Horizon h;
  h.index = 0;
  h.absolute = {1, p.grid.steps};
  h.jobs = p.jobs;
  h.baseline = p.baseline;
  return {h};
}

/// Campaign config with a single cell whose sampled plan on horizon 0 equals
/// `wanted`. The fixture's own spec and grid are used.
inline dcflex::solve::CampaignConfig single_cell_config(const dcflex::model::ScheduleProblem& p, double duration_hours,
                                                        double frequency, const dcflex::ActivationPlan& wanted) {
  dcflex::solve::CampaignConfig c;
  c.grid = p.grid;
  c.spec = p.spec;
  c.dq = p.dq;
  c.durations_hours = {duration_hours};
  c.annual_frequencies = {frequency};
  c.max_delays = {p.spec.max_delay_frac};
  c.fractions_pct = {100};
  c.workers = 1;
  auto svc = dcflex::ServiceSpec::make(duration_hours, frequency, p.grid);
  for (std::uint64_t seed = 1; seed < 10000; ++seed) {
    auto plan = dcflex::solve::sample_activations(p.grid, svc.window_count, svc.duration_steps,
                                                  dcflex::solve::activation_seed(seed, 0, duration_hours, frequency));
    if (plan.windows == wanted.windows) {
      c.master_seed = seed;
      return c;
    }
  }
  throw std::runtime_error("no seed reproduces the wanted activation plan");
}

}  // namespace fixtures
