#include "dcflex/report/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dcflex::report {
namespace {

constexpr double kCapacityCap = 0.95;

struct Shape {
  double target_mean;
  double daily_amplitude;
  double noise;  // amplitude of a slow random walk on the target
  int min_units, max_units;
  double long_share;  // share of jobs drawn from the long range
  int short_min, short_max, long_min, long_max;  // durations in steps
};

Shape shape_for(TraceProfile profile, int steps_per_day) {
  const int hour = steps_per_day / 24 > 0 ? steps_per_day / 24 : 1;
  if (profile == TraceProfile::ai_like) {
    return {0.8, 0.0, 0.02, 1, 8, 1.0, 0, 0, 4 * hour, 48 * hour};
  }
  return {0.6, 0.25, 0.05, 1, 4, 0.3, 1, hour, hour, 8 * hour};
}

}  // namespace

std::string to_string(TraceProfile profile) { return profile == TraceProfile::ai_like ? "ai_like" : "general_like"; }

TraceProfile parse_trace_profile(const std::string& text) {
  if (text == "ai_like" || text == "ai") return TraceProfile::ai_like;
  if (text == "general_like" || text == "general") return TraceProfile::general_like;
  throw DomainError("unknown trace profile '" + text + "'");
}

ingest::RawJobTable generate_synthetic_trace(TraceProfile profile, int days, std::uint64_t seed,
                                             const TimeGrid& grid, const DataCenterSpec& spec) {
  if (days < 10) throw DomainError("synthetic traces need at least 10 days");
  grid.validate();
  spec.validate();
  const int per_day = grid.steps_per_day();
  const int steps = days * per_day;
  const Shape shape = shape_for(profile, per_day);
  const double capacity = spec.total_resources;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw_int = [&](int lo, int hi) {
    return lo + static_cast<int>(std::floor(unit(rng) * (hi - lo + 1)));
  };

  std::vector<double> usage(static_cast<std::size_t>(steps), 0.0);
  ingest::RawJobTable table;
  double walk = 0.0;
  long long next_id = 0;
  for (int t = 0; t < steps; ++t) {
    walk = std::clamp(walk + shape.noise * (unit(rng) - 0.5) * 0.5, -shape.noise, shape.noise);
    const double phase = 2.0 * std::numbers::pi * (t % per_day) / per_day;
    const double target =
        std::clamp(shape.target_mean + walk - shape.daily_amplitude * std::cos(phase), 0.0, kCapacityCap) *
        capacity;
    for (int attempt = 0; attempt < 32 && usage[static_cast<std::size_t>(t)] < target; ++attempt) {
      const bool is_long = unit(rng) < shape.long_share;
      int duration = is_long ? draw_int(shape.long_min, shape.long_max) : draw_int(shape.short_min, shape.short_max);
      duration = std::min(duration, steps - t);
      double units = draw_int(shape.min_units, shape.max_units);
      units = std::min(units, std::floor(target - usage[static_cast<std::size_t>(t)]));
      if (units < 1.0) break;
      double peak = *std::max_element(usage.begin() + t, usage.begin() + t + duration);
      if (peak + units > kCapacityCap * capacity) continue;
      for (int k = t; k < t + duration; ++k) usage[static_cast<std::size_t>(k)] += units;
      ingest::RawJob job;
      job.id = "s" + std::to_string(next_id++);
      job.start_unix_s = grid.origin_unix_s + static_cast<std::int64_t>(std::llround(t * grid.step_seconds()));
      job.end_unix_s = job.start_unix_s + static_cast<std::int64_t>(std::llround(duration * grid.step_seconds()));
      job.submit_unix_s = std::max<std::int64_t>(grid.origin_unix_s, job.start_unix_s - draw_int(0, 3600));
      job.resources = units;
      table.rows.push_back(std::move(job));
    }
  }
  return table;
}

}  // namespace dcflex::report
