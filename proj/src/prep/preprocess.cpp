#include "dcflex/prep/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "dcflex/core/rng.hpp"
#include "dcflex/core/text.hpp"
#include "dcflex/ingest/csv.hpp"
#include "dcflex/prep/kmeans.hpp"

namespace dcflex::prep {
namespace {

int boundary_index(std::int64_t unix_s, const TimeGrid& grid) {
  return static_cast<int>(round_half_away(static_cast<double>(unix_s - grid.origin_unix_s) / grid.step_seconds()));
}

}  // namespace

ingest::RawJobTable zero_queue(const ingest::RawJobTable& table) {
  ingest::RawJobTable out = table;
  for (auto& r : out.rows) r.submit_unix_s = r.start_unix_s;
  return out;
}

JobTable discretize(const ingest::RawJobTable& table, const TimeGrid& grid) {
  grid.validate();
  JobTable out;
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  for (const auto& r : table.rows) {
    if (r.submit_unix_s != r.start_unix_s) {
      throw DomainError("job " + r.id + " has queue time; apply zero_queue first");
    }
    if (r.end_unix_s <= r.start_unix_s) continue;
    int b_start = boundary_index(r.start_unix_s, grid);
    int b_end = boundary_index(r.end_unix_s, grid);
    JobRecord job;
    job.id = r.id;
    job.submit_step = b_start + 1;
    job.compute_steps = b_end - b_start;
    job.resources = r.resources;
    if (job.compute_steps == 0) {
      job.compute_steps = 1;
      job.resources = r.resources * static_cast<double>(r.end_unix_s - r.start_unix_s) / grid.step_seconds();
    }
    job.complete_step = job.submit_step + job.compute_steps - 1;
    lo = std::min(lo, job.submit_step);
    hi = std::max(hi, job.complete_step);
    out.jobs.push_back(std::move(job));
  }
  if (table.window) {
    out.span = {boundary_index(table.window->begin_unix_s, grid) + 1, boundary_index(table.window->end_unix_s, grid)};
  } else if (!out.jobs.empty()) {
    out.span = {lo, hi};
  }
  return out;
}

JobTable partition_to_horizon(const JobTable& table, StepRange horizon) {
  JobTable out;
  out.span = horizon;
  for (const auto& job : table.jobs) {
    StepRange run = job.baseline_run();
    int first = std::max(run.first, horizon.first);
    int last = std::min(run.last, horizon.last);
    if (last < first) continue;
    JobRecord clipped = job;
    clipped.submit_step = first;
    clipped.complete_step = last;
    clipped.compute_steps = last - first + 1;
    out.jobs.push_back(std::move(clipped));
  }
  return out;
}

JobTable to_local(const JobTable& table) {
  JobTable out = table;
  int shift = table.span.first - 1;
  for (auto& job : out.jobs) {
    job.submit_step -= shift;
    job.complete_step -= shift;
  }
  out.span = {1, table.span.last - shift};
  return out;
}

JobTable aggregate_daily(const JobTable& table, int steps_per_day, const AggregationOptions& options) {
  if (options.clusters_per_day < 1) throw DomainError("clusters_per_day must be at least 1");
  if (steps_per_day < 1) throw DomainError("steps_per_day must be at least 1");

  std::map<int, std::vector<std::size_t>> by_day;
  for (std::size_t i = 0; i < table.jobs.size(); ++i) {
    int offset = table.jobs[i].submit_step - table.span.first;
    int day = offset >= 0 ? offset / steps_per_day : -((-offset + steps_per_day - 1) / steps_per_day);
    by_day[day].push_back(i);
  }

  JobTable out;
  out.span = table.span;
  for (const auto& [day, members] : by_day) {
    if (members.size() <= static_cast<std::size_t>(options.clusters_per_day)) {
      for (auto i : members) out.jobs.push_back(table.jobs[i]);
      continue;
    }
    std::vector<Point2> points;
    points.reserve(members.size());
    for (auto i : members) {
      points.push_back({double(table.jobs[i].submit_step), double(table.jobs[i].complete_step)});
    }
    KMeansOptions km{options.clusters_per_day, 50,
                     derive_seed(options.seed, static_cast<std::uint64_t>(day), "aggregate_daily")};
    std::vector<int> labels = kmeans(points, km);

    // Clusters in order of their first member so output order is stable.
    std::vector<std::vector<std::size_t>> clusters;
    std::map<int, std::size_t> slot;
    for (std::size_t m = 0; m < members.size(); ++m) {
      auto [it, inserted] = slot.try_emplace(labels[m], clusters.size());
      if (inserted) clusters.emplace_back();
      clusters[it->second].push_back(members[m]);
    }
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const auto& group = clusters[c];
      if (group.size() == 1) {
        out.jobs.push_back(table.jobs[group.front()]);
        continue;
      }
      JobRecord agg;
      agg.id = "agg-d" + std::to_string(day) + "-c" + std::to_string(c);
      agg.submit_step = std::numeric_limits<int>::max();
      agg.complete_step = std::numeric_limits<int>::min();
      double workload = 0.0;
      for (auto i : group) {
        const auto& j = table.jobs[i];
        agg.submit_step = std::min(agg.submit_step, j.submit_step);
        agg.complete_step = std::max(agg.complete_step, j.complete_step);
        workload += j.workload();
      }
      agg.compute_steps = agg.complete_step - agg.submit_step + 1;
      agg.resources = workload / agg.compute_steps;
      out.jobs.push_back(std::move(agg));
    }
  }
  return out;
}

BaselineProfile baseline_profile(const JobTable& table, const DataCenterSpec& spec, const TimeGrid& grid) {
  spec.validate();
  grid.validate();
  const auto T = static_cast<std::size_t>(grid.steps);
  std::vector<double> delta(T + 1, 0.0);
  for (const auto& job : table.jobs) {
    StepRange run = job.baseline_run();
    int first = std::max(run.first, 1);
    int last = std::min(run.last, grid.steps);
    if (last < first) continue;
    delta[static_cast<std::size_t>(first - 1)] += job.resources;
    delta[static_cast<std::size_t>(last)] -= job.resources;
  }
  BaselineProfile profile;
  profile.utilization.resize(T);
  profile.power_kw.resize(T);
  double running = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    running += delta[t];
    if (std::abs(running) < 1e-12) running = 0.0;  // cancellation residue
    double u = running / spec.total_resources;
    if (u > 1.0 + 1e-9) {
      throw DataError("baseline utilization " + format_number(u) + " exceeds 1 at step " + std::to_string(t + 1) +
                      "; total_resources is inconsistent with the jobs");
    }
    profile.utilization[t] = u;
    profile.power_kw[t] = spec.unit_power_kw * spec.total_resources * u + spec.fixed_power_kw;
  }
  double sum = 0.0;
  for (double u : profile.utilization) sum += u;
  profile.mean_util = sum / static_cast<double>(T);
  double var = 0.0;
  for (double u : profile.utilization) var += (u - profile.mean_util) * (u - profile.mean_util);
  profile.std_util = std::sqrt(var / static_cast<double>(T));
  return profile;
}

namespace {

bool within_capacity(const JobTable& table, const DataCenterSpec& spec, const TimeGrid& grid) {
  std::vector<double> delta(static_cast<std::size_t>(grid.steps) + 1, 0.0);
  for (const auto& job : table.jobs) {
    StepRange run = job.baseline_run();
    int first = std::max(run.first, 1);
    int last = std::min(run.last, grid.steps);
    if (last < first) continue;
    delta[static_cast<std::size_t>(first - 1)] += job.resources;
    delta[static_cast<std::size_t>(last)] -= job.resources;
  }
  double running = 0.0;
  for (int t = 0; t < grid.steps; ++t) {
    running += delta[static_cast<std::size_t>(t)];
    if (running > spec.total_resources * (1.0 + 1e-9)) return false;
  }
  return true;
}

}  // namespace

std::vector<Horizon> prepare_horizons(const JobTable& dataset, const DataCenterSpec& spec, const TimeGrid& grid,
                                      const AggregationOptions& aggregation) {
  grid.validate();
  std::vector<Horizon> horizons;
  int count = dataset.span.length() / grid.steps;
  for (int h = 0; h < count; ++h) {
    Horizon hz;
    hz.index = h;
    hz.absolute = {dataset.span.first + h * grid.steps, dataset.span.first + (h + 1) * grid.steps - 1};
    hz.jobs = to_local(partition_to_horizon(dataset, hz.absolute));
    if (aggregation.clusters_per_day > 0) {
      AggregationOptions opts = aggregation;
      opts.seed = splitmix64(aggregation.seed ^ static_cast<std::uint64_t>(h));
      const auto total = static_cast<int>(hz.jobs.jobs.size());
      // Merged clusters can overlap past the capacity; refine until they fit.
      for (;; opts.clusters_per_day *= 2) {
        JobTable merged = aggregate_daily(hz.jobs, grid.steps_per_day(), opts);
        if (opts.clusters_per_day >= total || within_capacity(merged, spec, grid)) {
          hz.jobs = std::move(merged);
          hz.clusters_per_day = opts.clusters_per_day;
          break;
        }
      }
    }
    hz.baseline = baseline_profile(hz.jobs, spec, grid);
    horizons.push_back(std::move(hz));
  }
  return horizons;
}

void write_job_table(const JobTable& table, std::ostream& out) {
  out << "id,submit_step,complete_step,compute_steps,resources\n";
  for (const auto& j : table.jobs) {
    out << ingest::csv_escape(j.id) << ',' << j.submit_step << ',' << j.complete_step << ',' << j.compute_steps
        << ',' << format_number(j.resources) << '\n';
  }
}

JobTable read_job_table(const std::filesystem::path& path) {
  auto csv = ingest::read_csv(path, true);
  const char* names[] = {"id", "submit_step", "complete_step", "compute_steps", "resources"};
  std::size_t col[5];
  for (int i = 0; i < 5; ++i) {
    col[i] = csv.column(names[i]);
    if (col[i] == ingest::npos) throw DataError(path.string() + " lacks column '" + names[i] + "'");
  }
  JobTable table;
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& f = csv.rows[r];
    auto num = [&](int i) {
      auto v = f.size() > col[i] ? parse_number(f[col[i]]) : std::nullopt;
      if (!v) throw DataError(path.string() + ":" + std::to_string(csv.line_numbers[r]) + ": bad " + names[i]);
      return *v;
    };
    JobRecord j;
    j.id = f[col[0]];
    j.submit_step = static_cast<int>(num(1));
    j.complete_step = static_cast<int>(num(2));
    j.compute_steps = static_cast<int>(num(3));
    j.resources = num(4);
    if (j.compute_steps < 1 || !(j.resources > 0.0)) {
      throw DataError(path.string() + ":" + std::to_string(csv.line_numbers[r]) + ": invalid job");
    }
    lo = std::min(lo, j.submit_step);
    hi = std::max(hi, j.complete_step);
    table.jobs.push_back(std::move(j));
  }
  if (!table.jobs.empty()) table.span = {lo, hi};
  return table;
}

}  // namespace dcflex::prep
