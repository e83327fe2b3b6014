#include "dcflex/solve/solve.hpp"

#include <numeric>

#include "dcflex/core/text.hpp"

namespace dcflex::solve {
namespace {

std::string describe(const model::ScheduleModel& m, const LpResult& r) {
  std::string s = m.kind == model::ModelKind::flexmax ? "flexmax" : "costmin";
  s += ": " + std::to_string(m.jobs.size()) + " jobs, " + std::to_string(m.lp.num_variables()) + " columns (" +
       std::to_string(m.lp.num_binaries()) + " binary), " + std::to_string(m.lp.num_constraints()) + " rows";
  if (m.kind == model::ModelKind::costmin) {
    s += ", target " + format_number(m.target_kw) + " kW";
    if (m.cost_lower_bound > 0.0) s += ", cost bound " + format_number(m.cost_lower_bound);
  }
  return s + "; solver: " + r.message;
}

}  // namespace

ScheduleResult solve(const model::ScheduleModel& m, const SolverBackend& backend, const SolverOptions& options) {
  LpResult r = backend.solve(m.lp, options);
  ScheduleResult out;
  out.status = r.status;
  out.has_solution = r.has_solution;
  out.objective = r.objective;
  out.dual_bound = r.dual_bound;
  out.mip_gap = r.mip_gap;
  out.target_unreachable = m.kind == model::ModelKind::costmin && r.status == SolveStatus::infeasible;
  out.diagnostics = describe(m, r);
  if (!r.has_solution) return out;

  const auto& v = r.values;
  auto val = [&](int col) { return col >= 0 ? v[static_cast<std::size_t>(col)] : 0.0; };
  const auto T = static_cast<std::size_t>(m.steps);
  const std::size_t J = m.jobs.size();
  ScheduleSolution& s = out.solution;
  s.x.assign(J, std::vector<double>(T, 0.0));
  s.z.assign(J, std::vector<double>(T, 0.0));
  s.x_dq.assign(J, std::vector<double>(T, 0.0));
  s.run_flag.assign(J, std::vector<double>(T, 0.0));
  s.n_preempt.assign(J, 0.0);
  s.end_marker.assign(J, 0.0);
  s.delay_frac.assign(J, 0.0);
  s.job_cost.assign(J, 0.0);
  for (std::size_t j = 0; j < J; ++j) {
    const model::JobVars& jv = m.jobs[j];
    for (std::size_t k = 0; k < jv.x.size(); ++k) {
      const auto t = static_cast<std::size_t>(jv.available.first - 1) + k;
      s.x[j][t] = val(jv.x[k]);
      s.z[j][t] = val(jv.z[k]);
      if (!jv.x_dq.empty()) s.x_dq[j][t] = val(jv.x_dq[k]);
    }
    for (std::size_t k = 0; k < jv.run_flag.size(); ++k) {
      s.run_flag[j][static_cast<std::size_t>(jv.run_flag_first - 1) + k] = val(jv.run_flag[k]);
    }
    s.n_preempt[j] = val(jv.n_preempt);
    s.end_marker[j] = val(jv.end_marker);
    s.delay_frac[j] = val(jv.delay);
    s.job_cost[j] = val(jv.cost);
  }
  for (int col : m.power) s.power_kw.push_back(val(col));
  for (int col : m.flex) s.flex_kw.push_back(val(col));
  for (int col : m.sustained) s.sustained_kw.push_back(val(col));
  if (!s.sustained_kw.empty()) {
    s.mean_flex_kw = std::accumulate(s.sustained_kw.begin(), s.sustained_kw.end(), 0.0) /
                     static_cast<double>(s.sustained_kw.size());
  }
  s.total_cost = std::accumulate(s.job_cost.begin(), s.job_cost.end(), 0.0);
  s.extra_energy_cost = val(m.extra_energy_cost);
  s.objective = r.objective;
  return out;
}

}  // namespace dcflex::solve
