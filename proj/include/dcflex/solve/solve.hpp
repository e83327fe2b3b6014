#pragma once

#include <string>

#include "dcflex/core/types.hpp"
#include "dcflex/model/schedule_model.hpp"
#include "dcflex/solve/backend.hpp"

namespace dcflex::solve {

struct ScheduleResult {
  SolveStatus status = SolveStatus::error;
  bool has_solution = false;
  ScheduleSolution solution;
  double objective = 0.0;
  double dual_bound = 0.0;
  double mip_gap = 0.0;
  bool target_unreachable = false;  // infeasible cost model: target above the maximum
  std::string diagnostics;  // model size, target and solver message
};

/// Solves a built schedule model and maps the column values back to jobs,
/// steps and windows. Non-optimal statuses are returned, not thrown.
ScheduleResult solve(const model::ScheduleModel& model, const SolverBackend& backend,
                     const SolverOptions& options = {});

}  // namespace dcflex::solve
