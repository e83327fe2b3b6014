#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcflex {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data that cannot be interpreted (bad file, bad column, bad value).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Parameters or arguments outside their documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Uniform time discretization of one optimization horizon.
///
/// Step indices are 1-based and inclusive: step 1 covers
/// [origin_unix_s, origin_unix_s + step_minutes * 60).
struct TimeGrid {
  double step_minutes = 15.0;
  int steps = 960;
  std::int64_t origin_unix_s = 0;

  double step_hours() const { return step_minutes / 60.0; }
  double step_seconds() const { return step_minutes * 60.0; }
  int steps_per_day() const;
  double horizon_days() const { return steps * step_minutes / 1440.0; }

  /// Throws DomainError unless step_minutes > 0 and steps >= 1.
  void validate() const;
};

/// Closed interval of step indices [first, last].
struct StepRange {
  int first = 1;
  int last = 0;

  int length() const { return last >= first ? last - first + 1 : 0; }
  bool contains(int step) const { return step >= first && step <= last; }
  friend bool operator==(const StepRange&, const StepRange&) = default;
};

/// One discretized computing job.
struct JobRecord {
  std::string id;
  int submit_step = 1;
  int complete_step = 1;  // baseline completion, inclusive
  int compute_steps = 1;
  double resources = 1.0;  // may be fractional after aggregation

  double workload() const { return compute_steps * resources; }
  StepRange baseline_run() const { return {submit_step, submit_step + compute_steps - 1}; }
  friend bool operator==(const JobRecord&, const JobRecord&) = default;
};

/// A set of discretized jobs over a span of steps.
struct JobTable {
  std::vector<JobRecord> jobs;
  StepRange span;

  double total_workload() const;
  bool empty() const { return jobs.empty(); }
  std::size_t size() const { return jobs.size(); }
};

enum class DeviceClass { gpu_ai, cpu_general };

std::string to_string(DeviceClass device);
DeviceClass parse_device_class(const std::string& text);

/// Physical parameters of a data center.
struct DataCenterSpec {
  double total_resources = 1.0;
  double unit_power_kw = 1.0;
  double fixed_power_kw = 0.0;
  double preempt_overhead_min = 1.5;
  double preempt_budget_frac = 0.01;
  double max_delay_frac = 0.2;
  DeviceClass device_class = DeviceClass::gpu_ai;

  /// Power when every resource is fully utilized.
  double max_power_kw() const { return unit_power_kw * total_resources + fixed_power_kw; }
  void validate() const;
};

/// Preemption overhead in minutes per interruption for the given device class.
double default_preempt_overhead_min(DeviceClass device);

/// Economic parameters of the cost model.
struct EconParams {
  double price_reduction_coeff = 0.5;
  double hourly_unit_price = 1.0;
  double energy_price = 0.05;

  void validate() const;
};

/// A power-system service: activation duration and how often it is called.
struct ServiceSpec {
  int duration_steps = 1;
  double annual_frequency = 365.0;
  int window_count = 1;

  /// Derives a service for a horizon; throws DomainError if the
  /// activations do not fit inside the horizon.
  static ServiceSpec make(double duration_hours, double annual_frequency, const TimeGrid& grid);
};

/// Concrete activation windows within one horizon.
struct ActivationPlan {
  std::vector<StepRange> windows;

  std::size_t count() const { return windows.size(); }
  int duration_steps() const { return windows.empty() ? 0 : windows.front().length(); }
  /// True when windows are pairwise disjoint, equally long and inside [1, steps].
  bool valid_for(int steps) const;
};

/// Utilization and power of the unshifted schedule.
struct BaselineProfile {
  std::vector<double> utilization;  // index t-1 holds step t
  std::vector<double> power_kw;
  double mean_util = 0.0;
  double std_util = 0.0;
};

/// Values of an optimal schedule mapped back to domain indices.
///
/// Per-(job, step) vectors are dense over the horizon: x[j][t-1].
struct ScheduleSolution {
  std::vector<std::vector<double>> x;
  std::vector<std::vector<double>> z;
  std::vector<std::vector<double>> x_dq;
  std::vector<std::vector<double>> run_flag;
  std::vector<double> n_preempt;
  std::vector<double> power_kw;
  std::vector<double> flex_kw;
  std::vector<double> sustained_kw;
  std::vector<double> end_marker;
  std::vector<double> delay_frac;
  std::vector<double> job_cost;
  double mean_flex_kw = 0.0;
  double total_cost = 0.0;
  double extra_energy_cost = 0.0;
  double objective = 0.0;
};

/// Rounds to the nearest integer, halves away from zero.
long long round_half_away(double value);

/// Number of activations in a horizon for a given annual frequency (at least 1).
int activations_per_window(double annual_frequency, double horizon_days);

/// Activation duration in grid steps (nearest integer, at least 1).
int duration_to_steps(double duration_hours, const TimeGrid& grid);

}  // namespace dcflex
