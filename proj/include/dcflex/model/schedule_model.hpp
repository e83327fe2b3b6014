#pragma once

#include <string>
#include <vector>

#include "dcflex/core/types.hpp"
#include "dcflex/model/linear_model.hpp"

namespace dcflex::model {

/// Raised for malformed models and for index sets that cannot hold a job.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Dynamic quota: spare resources may speed a job up by `speedup` per extra
/// unit of its own allocation.
struct DqParams {
  bool enabled = false;
  double speedup = 0.5;

  void validate() const;
};

/// Everything that defines one horizon's scheduling problem.
struct ScheduleProblem {
  JobTable jobs;  // local step indices 1..grid.steps
  DataCenterSpec spec;
  BaselineProfile baseline;
  ActivationPlan plan;
  TimeGrid grid;
  DqParams dq;
};

/// Column indices of one job's variables. Per-step vectors cover `available`.
struct JobVars {
  StepRange available;
  std::vector<int> x;
  std::vector<int> z;
  std::vector<int> x_dq;
  int run_flag_first = 0;     // first step carrying a run flag
  std::vector<int> run_flag;  // steps run_flag_first..available.last
  int n_preempt = -1;
  int end_marker = -1;
  int delay = -1;
  int cost = -1;
};

enum class ModelKind { flexmax, costmin };

/// A built model plus the maps from its columns back to domain indices.
struct ScheduleModel {
  ModelKind kind = ModelKind::flexmax;
  LinearModel lp;
  int steps = 0;
  double step_hours = 0.0;
  std::vector<JobVars> jobs;
  std::vector<int> power;      // per step
  std::vector<int> flex;       // per step
  std::vector<int> sustained;  // per activation window
  int extra_energy_cost = -1;  // costmin with dynamic quota only
  double baseline_energy_kwh = 0.0;
  double target_kw = 0.0;
  double cost_lower_bound = 0.0;  // tightening bound actually added (0 when none)
};

/// Steps a job may run in: from its submission until round((1 + max_delay) * D)
/// steps later, clipped to the horizon.
StepRange available_steps(const JobRecord& job, double max_delay_frac, int horizon_steps);

/// Flexibility maximization: the largest demand reduction that can be held
/// through every activation window, averaged over windows.
///
/// Throws ModelError listing the offending jobs when a job cannot finish its
/// workload inside its available steps, and DomainError for bad inputs.
ScheduleModel build_flexmax(const ScheduleProblem& problem);

struct CostminOptions {
  double target_kw = 0.0;
  bool tighten = true;
  /// Largest flexibility reachable without delaying any job; only used to
  /// tighten dynamic-quota models. Negative means unknown (no tightening).
  double zero_delay_flex_kw = -1.0;
};

/// Cost minimization: cheapest schedule delivering at least `target_kw` of
/// average flexibility, with job delay priced by the linear reduction model.
/// Run flags after a job's nominal completion are binary.
ScheduleModel build_costmin(const ScheduleProblem& problem, const EconParams& econ, const CostminOptions& options);

/// Valid lower bound on the total price reduction for delivering `target_kw`.
/// With dynamic quota only the part above `zero_delay_flex_kw` must be paid
/// for, discounted by the speed-up.
double tightening_bound(const EconParams& econ, const DataCenterSpec& spec, const ActivationPlan& plan,
                        const TimeGrid& grid, double target_kw, const DqParams& dq = {},
                        double zero_delay_flex_kw = 0.0);

}  // namespace dcflex::model
