#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dcflex/core/types.hpp"
#include "dcflex/model/schedule_model.hpp"
#include "dcflex/prep/preprocess.hpp"

namespace fixtures {

using dcflex::ActivationPlan;
using dcflex::DataCenterSpec;
using dcflex::JobRecord;
using dcflex::JobTable;
using dcflex::TimeGrid;
using dcflex::model::ScheduleProblem;

inline JobRecord job(const std::string& id, int submit, int steps, double resources) {
  return {id, submit, submit + steps - 1, steps, resources};
}

inline TimeGrid grid(int steps) {
  TimeGrid g;
  g.steps = steps;
  return g;
}

inline ScheduleProblem make_problem(JobTable jobs, DataCenterSpec spec, ActivationPlan plan, int steps) {
  ScheduleProblem p;
  p.grid = grid(steps);
  p.jobs = std::move(jobs);
  p.jobs.span = {1, steps};
  p.spec = spec;
  p.plan = std::move(plan);
  p.baseline = dcflex::prep::baseline_profile(p.jobs, p.spec, p.grid);
  return p;
}

/// Two 1-unit jobs at steps 1-2 of a 4-step horizon, 2 units of 1 kW, window {1}.
inline ScheduleProblem tiny_a() {
  DataCenterSpec spec;
  spec.total_resources = 2;
  spec.unit_power_kw = 1;
  spec.fixed_power_kw = 0;
  spec.max_delay_frac = 1.0;
  spec.preempt_overhead_min = 0.5;
  spec.preempt_budget_frac = 0.01;
  JobTable jobs;
  jobs.jobs = {job("a", 1, 2, 1.0), job("b", 1, 2, 1.0)};
  return make_problem(jobs, spec, ActivationPlan{{{1, 1}}}, 4);
}

/// One 1-unit job at steps 1-2 on 2 units, no delay, window {1}, dynamic quota 0.5.
inline ScheduleProblem tiny_b() {
  DataCenterSpec spec;
  spec.total_resources = 2;
  spec.unit_power_kw = 1;
  spec.fixed_power_kw = 0;
  spec.max_delay_frac = 0.0;
  spec.preempt_overhead_min = 0.5;
  spec.preempt_budget_frac = 0.01;
  JobTable jobs;
  jobs.jobs = {job("j", 1, 2, 1.0)};
  ScheduleProblem p = make_problem(jobs, spec, ActivationPlan{{{1, 1}}}, 4);
  p.dq.enabled = true;
  p.dq.speedup = 0.5;
  return p;
}

struct RandomOptions {
  int max_jobs = 5;
  int max_steps = 8;
  double max_delay = 0.5;
  bool allow_preemption = true;
};

/// Random zero-queue instance whose baseline fits the capacity.
inline ScheduleProblem random_problem(std::mt19937_64& rng, const RandomOptions& o) {
  std::uniform_int_distribution<int> steps_d(2, o.max_steps);
  const int T = steps_d(rng);
  std::uniform_int_distribution<int> jobs_d(1, o.max_jobs);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  JobTable jobs;
  const int n = jobs_d(rng);
  for (int j = 0; j < n; ++j) {
    int submit = std::uniform_int_distribution<int>(1, T)(rng);
    int steps = std::uniform_int_distribution<int>(1, T - submit + 1)(rng);
    double res = 0.5 + std::floor(unit(rng) * 6.0) * 0.5;
    jobs.jobs.push_back(job("j" + std::to_string(j), submit, steps, res));
  }
  std::vector<double> load(static_cast<std::size_t>(T), 0.0);
  for (const auto& jb : jobs.jobs) {
    for (int t = jb.submit_step; t <= jb.complete_step; ++t) load[static_cast<std::size_t>(t - 1)] += jb.resources;
  }
  DataCenterSpec spec;
  spec.total_resources = *std::max_element(load.begin(), load.end()) * (1.0 + unit(rng));
  spec.unit_power_kw = 0.5 + unit(rng);
  spec.fixed_power_kw = 0.0;
  spec.max_delay_frac = o.max_delay * unit(rng);
  spec.preempt_overhead_min = o.allow_preemption ? 0.0 : 1.5;
  spec.preempt_budget_frac = 0.01;

  const int duration = std::uniform_int_distribution<int>(1, std::max(1, T / 3))(rng);
  const int max_count = T / duration;
  const int count = std::uniform_int_distribution<int>(1, std::min(3, max_count))(rng);
  // Evenly spaced windows; each fits in its own slot of T / count steps.
  ActivationPlan plan;
  const int slot = T / count;
  for (int i = 0; i < count; ++i) {
    int start = i * slot + 1 + std::uniform_int_distribution<int>(0, slot - duration)(rng);
    plan.windows.push_back({start, start + duration - 1});
  }
  return make_problem(jobs, spec, plan, T);
}

/// Checks a schedule against the problem's rules directly. Returns an empty
/// string when every rule holds within `tol`.
inline std::string check_schedule(const ScheduleProblem& p, const dcflex::ScheduleSolution& s, double tol) {
  const int T = p.grid.steps;
  const double K = p.dq.enabled ? p.dq.speedup : 0.0;
  std::vector<double> load(static_cast<std::size_t>(T), 0.0);
  for (std::size_t j = 0; j < p.jobs.jobs.size(); ++j) {
    const auto& jb = p.jobs.jobs[j];
    const int last = std::min<long long>(
        T, jb.submit_step + std::llround((1.0 + p.spec.max_delay_frac) * jb.compute_steps) - 1);
    double work = 0.0;
    double drops = 0.0;
    for (int t = 1; t <= T; ++t) {
      const auto tu = static_cast<std::size_t>(t - 1);
      double x = s.x[j][tu];
      double xdq = s.x_dq[j][tu];
      if (t < jb.submit_step || t > last) {
        if (std::abs(x) > tol || std::abs(xdq) > tol) return "job " + jb.id + " runs outside its steps";
      }
      if (x < -tol || x > 1 + tol || xdq < -tol || xdq > x + tol) return "job " + jb.id + " allocation out of range";
      work += x + K * xdq;
      load[tu] += jb.resources * (x + xdq);
      double next = t < T ? s.x[j][tu + 1] : 0.0;
      drops += std::max(0.0, x - next);
    }
    if (std::abs(work - jb.compute_steps) > tol * jb.compute_steps) return "job " + jb.id + " incomplete";
    const double preemptions = std::max(0.0, drops - 1.0);
    if (p.spec.preempt_overhead_min > 0.0 &&
        preemptions * p.spec.preempt_overhead_min / p.grid.step_minutes >
            p.spec.preempt_budget_frac * jb.compute_steps + tol) {
      return "job " + jb.id + " exceeds its preemption budget";
    }
  }
  for (int t = 1; t <= T; ++t) {
    const auto tu = static_cast<std::size_t>(t - 1);
    if (load[tu] > p.spec.total_resources + tol) return "capacity exceeded at step " + std::to_string(t);
    double power = p.spec.unit_power_kw * load[tu] + p.spec.fixed_power_kw;
    if (std::abs(power - s.power_kw[tu]) > tol * std::max(1.0, power)) return "power mismatch";
    if (std::abs(p.baseline.power_kw[tu] - s.power_kw[tu] - s.flex_kw[tu]) > tol * std::max(1.0, power)) {
      return "flexibility mismatch";
    }
  }
  for (std::size_t i = 0; i < p.plan.windows.size(); ++i) {
    for (int t = p.plan.windows[i].first; t <= p.plan.windows[i].last; ++t) {
      if (s.flex_kw[static_cast<std::size_t>(t - 1)] < s.sustained_kw[i] - tol) return "window not sustained";
    }
  }
  return {};
}

}  // namespace fixtures
