#include "dcflex/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dcflex {

int TimeGrid::steps_per_day() const {
  double per_day = 1440.0 / step_minutes;
  long long rounded = std::llround(per_day);
  if (std::abs(per_day - static_cast<double>(rounded)) > 1e-9) {
    throw DomainError("step length does not divide a day: " + std::to_string(step_minutes) + " min");
  }
  return static_cast<int>(rounded);
}

void TimeGrid::validate() const {
  if (!(step_minutes > 0.0)) throw DomainError("step_minutes must be positive");
  if (steps < 1) throw DomainError("grid needs at least one step");
}

double JobTable::total_workload() const {
  return std::accumulate(jobs.begin(), jobs.end(), 0.0,
                         [](double acc, const JobRecord& j) { return acc + j.workload(); });
}

std::string to_string(DeviceClass device) {
  return device == DeviceClass::gpu_ai ? "gpu_ai" : "cpu_general";
}

DeviceClass parse_device_class(const std::string& text) {
  if (text == "gpu_ai" || text == "gpu") return DeviceClass::gpu_ai;
  if (text == "cpu_general" || text == "cpu") return DeviceClass::cpu_general;
  throw DomainError("unknown device class '" + text + "'");
}

double default_preempt_overhead_min(DeviceClass device) {
  return device == DeviceClass::gpu_ai ? 1.5 : 0.5;
}

void DataCenterSpec::validate() const {
  if (!(total_resources > 0.0)) throw DomainError("total_resources must be positive");
  if (!(unit_power_kw > 0.0)) throw DomainError("unit_power_kw must be positive");
  if (fixed_power_kw < 0.0) throw DomainError("fixed_power_kw must be non-negative");
  if (preempt_overhead_min < 0.0) throw DomainError("preempt_overhead_min must be non-negative");
  if (!(preempt_budget_frac > 0.0 && preempt_budget_frac <= 1.0)) {
    throw DomainError("preempt_budget_frac must lie in (0, 1]");
  }
  if (max_delay_frac < 0.0) throw DomainError("max_delay_frac must be non-negative");
}

void EconParams::validate() const {
  if (price_reduction_coeff < 0.0 || hourly_unit_price < 0.0 || energy_price < 0.0) {
    throw DomainError("economic parameters must be non-negative");
  }
}

ServiceSpec ServiceSpec::make(double duration_hours, double annual_frequency, const TimeGrid& grid) {
  grid.validate();
  ServiceSpec s;
  s.duration_steps = duration_to_steps(duration_hours, grid);
  s.annual_frequency = annual_frequency;
  s.window_count = activations_per_window(annual_frequency, grid.horizon_days());
  if (static_cast<long long>(s.window_count) * s.duration_steps > grid.steps) {
    throw DomainError("service does not fit the horizon: " + std::to_string(s.window_count) + " x " +
                      std::to_string(s.duration_steps) + " steps > " + std::to_string(grid.steps));
  }
  return s;
}

bool ActivationPlan::valid_for(int steps) const {
  if (windows.empty()) return true;
  int len = windows.front().length();
  std::vector<StepRange> sorted = windows;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& w = sorted[i];
    if (w.length() != len || len < 1 || w.first < 1 || w.last > steps) return false;
    if (i > 0 && w.first <= sorted[i - 1].last) return false;
  }
  return true;
}

long long round_half_away(double value) { return std::llround(value); }

int activations_per_window(double annual_frequency, double horizon_days) {
  if (!(annual_frequency > 0.0) || !(horizon_days > 0.0)) {
    throw DomainError("annual frequency and horizon length must be positive");
  }
  return static_cast<int>(std::max(1LL, round_half_away(annual_frequency * horizon_days / 365.0)));
}

int duration_to_steps(double duration_hours, const TimeGrid& grid) {
  if (!(duration_hours > 0.0)) throw DomainError("duration must be positive");
  grid.validate();
  return static_cast<int>(std::max(1LL, round_half_away(duration_hours * 60.0 / grid.step_minutes)));
}

}  // namespace dcflex
