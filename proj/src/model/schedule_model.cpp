#include "dcflex/model/schedule_model.hpp"

#include <algorithm>
#include <cmath>

#include "dcflex/core/text.hpp"

namespace dcflex::model {
namespace {

std::string idx(int j, int t) { return std::to_string(j) + "_" + std::to_string(t); }

void check_problem(const ScheduleProblem& p) {
  p.grid.validate();
  p.spec.validate();
  p.dq.validate();
  const int T = p.grid.steps;
  if (static_cast<int>(p.baseline.power_kw.size()) != T) {
    throw DomainError("baseline covers " + std::to_string(p.baseline.power_kw.size()) + " steps, horizon has " +
                      std::to_string(T));
  }
  if (!p.plan.valid_for(T)) throw DomainError("activation windows overlap, differ in length or leave the horizon");

  std::vector<std::string> bad;
  for (const auto& job : p.jobs.jobs) {
    if (job.submit_step < 1 || job.submit_step > T || job.compute_steps < 1 || !(job.resources > 0.0)) {
      throw DomainError("job " + job.id + " is not a valid job of a " + std::to_string(T) + "-step horizon");
    }
    double per_step = p.dq.enabled ? 1.0 + p.dq.speedup : 1.0;
    StepRange avail = available_steps(job, p.spec.max_delay_frac, T);
    if (avail.length() * per_step < job.compute_steps - 1e-9) bad.push_back(job.id);
  }
  if (!bad.empty()) {
    std::string list;
    for (std::size_t i = 0; i < bad.size() && i < 20; ++i) list += (i ? ", " : "") + bad[i];
    if (bad.size() > 20) list += ", ...";
    throw ModelError(std::to_string(bad.size()) + " job(s) cannot complete inside their available steps: " + list);
  }
}

// Builds the constraint set shared by both problems.
ScheduleModel build_common(const ScheduleProblem& p) {
  check_problem(p);
  const int T = p.grid.steps;
  const auto& spec = p.spec;
  ScheduleModel m;
  m.steps = T;
  m.step_hours = p.grid.step_hours();
  LinearModel& lp = m.lp;

  std::vector<std::vector<Term>> load(static_cast<std::size_t>(T));   // resources in use per step
  std::vector<std::vector<Term>> power(static_cast<std::size_t>(T));  // G * resources per step

  for (int j = 0; j < static_cast<int>(p.jobs.jobs.size()); ++j) {
    const JobRecord& job = p.jobs.jobs[static_cast<std::size_t>(j)];
    JobVars jv;
    jv.available = available_steps(job, spec.max_delay_frac, T);
    for (int t = jv.available.first; t <= jv.available.last; ++t) {
      jv.x.push_back(lp.add_variable("x_" + idx(j, t), 0.0, 1.0));
      jv.z.push_back(lp.add_variable("z_" + idx(j, t), 0.0, 1.0));
      if (p.dq.enabled) jv.x_dq.push_back(lp.add_variable("xdq_" + idx(j, t), 0.0, 1.0));
    }
    jv.n_preempt = lp.add_variable("np_" + std::to_string(j), 0.0, kInf);

    const int len = jv.available.length();
    std::vector<Term> completion, preempt_count{{jv.n_preempt, 1.0}};
    for (int k = 0; k < len; ++k) {
      const int t = jv.available.first + k;
      const auto ku = static_cast<std::size_t>(k);
      // z >= x_t - x_{t+1}; past the available set x is zero.
      std::vector<Term> drop{{jv.z[ku], 1.0}, {jv.x[ku], -1.0}};
      if (k + 1 < len) drop.push_back({jv.x[ku + 1], 1.0});
      lp.add_ge("preempt_" + idx(j, t), std::move(drop), 0.0);
      preempt_count.push_back({jv.z[ku], -1.0});
      completion.push_back({jv.x[ku], 1.0});

      auto tu = static_cast<std::size_t>(t - 1);
      load[tu].push_back({jv.x[ku], job.resources});
      power[tu].push_back({jv.x[ku], -spec.unit_power_kw * job.resources});
      if (p.dq.enabled) {
        completion.push_back({jv.x_dq[ku], p.dq.speedup});
        load[tu].push_back({jv.x_dq[ku], job.resources});
        power[tu].push_back({jv.x_dq[ku], -spec.unit_power_kw * job.resources});
        lp.add_le("dqlim_" + idx(j, t), {{jv.x_dq[ku], 1.0}, {jv.x[ku], -1.0}}, 0.0);
      }
    }
    // n^P = sum z - 1: the final decrease at completion is not a preemption.
    lp.add_eq("npdef_" + std::to_string(j), std::move(preempt_count), -1.0);
    if (spec.preempt_overhead_min > 0.0) {
      lp.add_le("npbudget_" + std::to_string(j), {{jv.n_preempt, spec.preempt_overhead_min / p.grid.step_minutes}},
                spec.preempt_budget_frac * job.compute_steps);
    }
    lp.add_eq("complete_" + std::to_string(j), std::move(completion), static_cast<double>(job.compute_steps));
    m.jobs.push_back(std::move(jv));
  }

  for (int t = 1; t <= T; ++t) {
    auto tu = static_cast<std::size_t>(t - 1);
    int pv = lp.add_variable("p_" + std::to_string(t), -kInf, kInf);
    int fv = lp.add_variable("f_" + std::to_string(t), -kInf, kInf);
    m.power.push_back(pv);
    m.flex.push_back(fv);
    if (!load[tu].empty()) lp.add_le("cap_" + std::to_string(t), std::move(load[tu]), spec.total_resources);
    power[tu].push_back({pv, 1.0});
    lp.add_eq("power_" + std::to_string(t), std::move(power[tu]), spec.fixed_power_kw);
    lp.add_eq("flex_" + std::to_string(t), {{fv, 1.0}, {pv, 1.0}}, p.baseline.power_kw[tu]);
    m.baseline_energy_kwh += p.baseline.power_kw[tu] * m.step_hours;
  }

  const double weight = p.plan.windows.empty() ? 0.0 : 1.0 / static_cast<double>(p.plan.count());
  for (int i = 0; i < static_cast<int>(p.plan.count()); ++i) {
    int sv = lp.add_variable("s_" + std::to_string(i), 0.0, kInf, weight);
    m.sustained.push_back(sv);
    const StepRange w = p.plan.windows[static_cast<std::size_t>(i)];
    for (int t = w.first; t <= w.last; ++t) {
      lp.add_ge("sustain_" + idx(i, t), {{m.flex[static_cast<std::size_t>(t - 1)], 1.0}, {sv, -1.0}}, 0.0);
    }
  }
  return m;
}

}  // namespace

void DqParams::validate() const {
  if (!(speedup >= 0.0 && speedup <= 1.0)) throw DomainError("dynamic-quota speed-up must lie in [0, 1]");
}

StepRange available_steps(const JobRecord& job, double max_delay_frac, int horizon_steps) {
  long long span = round_half_away((1.0 + max_delay_frac) * job.compute_steps);
  long long last = job.submit_step + span - 1;
  return {std::max(job.submit_step, 1), static_cast<int>(std::min<long long>(last, horizon_steps))};
}

ScheduleModel build_flexmax(const ScheduleProblem& problem) {
  ScheduleModel m = build_common(problem);
  m.kind = ModelKind::flexmax;
  m.lp.set_sense(Sense::maximize);
  m.lp.validate();
  return m;
}

ScheduleModel build_costmin(const ScheduleProblem& problem, const EconParams& econ, const CostminOptions& options) {
  econ.validate();
  if (!(options.target_kw >= 0.0) || !std::isfinite(options.target_kw)) {
    throw DomainError("flexibility target must be a non-negative number");
  }
  ScheduleModel m = build_common(problem);
  m.kind = ModelKind::costmin;
  m.target_kw = options.target_kw;
  LinearModel& lp = m.lp;
  lp.set_sense(Sense::minimize);
  for (int s : m.sustained) lp.set_objective_coef(s, 0.0);

  const double money_per_delay_step = econ.price_reduction_coeff * m.step_hours * econ.hourly_unit_price;
  std::vector<Term> total_cost;
  for (int j = 0; j < static_cast<int>(m.jobs.size()); ++j) {
    const JobRecord& job = problem.jobs.jobs[static_cast<std::size_t>(j)];
    JobVars& jv = m.jobs[static_cast<std::size_t>(j)];
    const std::string js = std::to_string(j);
    jv.end_marker = lp.add_variable("e_" + js, 0.0, kInf);
    jv.delay = lp.add_variable("d_" + js, 0.0, kInf);
    jv.cost = lp.add_variable("c_" + js, 0.0, kInf, 1.0);

    const double D = job.compute_steps;
    const double due = job.submit_step + D;
    // Run flags are only needed where the end-marker constraint binds.
    jv.run_flag_first = std::max(jv.available.first, job.submit_step + job.compute_steps);
    for (int t = jv.run_flag_first; t <= jv.available.last; ++t) {
      int flag = lp.add_variable("xr_" + idx(j, t), 0.0, 1.0, 0.0, VarType::binary);
      jv.run_flag.push_back(flag);
      int x = jv.x[static_cast<std::size_t>(t - jv.available.first)];
      lp.add_ge("run_" + idx(j, t), {{flag, 1.0}, {x, -1.0}}, 0.0);
      // e >= t + 1 when the flag is set, e >= s + D otherwise.
      lp.add_ge("end_" + idx(j, t), {{jv.end_marker, 1.0}, {flag, -static_cast<double>(t + 1 - due)}}, due);
    }
    lp.add_ge("delay_" + js, {{jv.delay, 1.0}, {jv.end_marker, -1.0 / D}}, -(job.submit_step + D) / D);
    lp.add_ge("cost_" + js, {{jv.cost, 1.0}, {jv.delay, -money_per_delay_step * D * job.resources}}, 0.0);
    total_cost.push_back({jv.cost, 1.0});
  }

  if (!m.sustained.empty()) {
    std::vector<Term> avg;
    const double w = 1.0 / static_cast<double>(m.sustained.size());
    for (int s : m.sustained) avg.push_back({s, w});
    lp.add_ge("target", std::move(avg), options.target_kw);
  } else if (options.target_kw > 0.0) {
    lp.add_ge("target", {}, options.target_kw);  // no windows: any positive target is unreachable
  }

  if (problem.dq.enabled) {
    // C^E = pi * dt * (sum p - sum p_base)
    m.extra_energy_cost = lp.add_variable("ce", -kInf, kInf, 1.0);
    std::vector<Term> row{{m.extra_energy_cost, 1.0}};
    for (int pv : m.power) row.push_back({pv, -econ.energy_price * m.step_hours});
    lp.add_eq("energycost", std::move(row), -econ.energy_price * m.baseline_energy_kwh);
  }

  if (options.tighten && !total_cost.empty()) {
    double bound = 0.0;
    if (!problem.dq.enabled) {
      bound = tightening_bound(econ, problem.spec, problem.plan, problem.grid, options.target_kw);
    } else if (options.zero_delay_flex_kw >= 0.0) {
      bound = tightening_bound(econ, problem.spec, problem.plan, problem.grid, options.target_kw, problem.dq,
                               options.zero_delay_flex_kw);
    }
    if (bound > 0.0) {
      lp.add_ge("tighten", total_cost, bound);
      m.cost_lower_bound = bound;
    }
  }
  lp.validate();
  return m;
}

double tightening_bound(const EconParams& econ, const DataCenterSpec& spec, const ActivationPlan& plan,
                        const TimeGrid& grid, double target_kw, const DqParams& dq, double zero_delay_flex_kw) {
  if (!(target_kw >= 0.0)) throw DomainError("flexibility target must be non-negative");
  double shifted = target_kw;
  double speedup = 1.0;
  if (dq.enabled) {
    shifted = target_kw - zero_delay_flex_kw;
    speedup = 1.0 + dq.speedup;
  }
  if (shifted <= 0.0 || plan.windows.empty()) return 0.0;
  const double steps = static_cast<double>(plan.duration_steps()) * static_cast<double>(plan.count());
  return econ.price_reduction_coeff * steps * grid.step_hours() * econ.hourly_unit_price * shifted /
         (spec.unit_power_kw * speedup);
}

}  // namespace dcflex::model
