#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "dcflex/core/types.hpp"
#include "dcflex/ingest/job_trace.hpp"

namespace dcflex::prep {

/// Sets every submission time to the job's start time.
ingest::RawJobTable zero_queue(const ingest::RawJobTable& table);

/// Rounds start and end times to grid boundaries relative to `grid.origin_unix_s`.
/// Jobs that round to zero steps get one step and proportionally fewer
/// resources so their workload is kept. Zero-length jobs carry no workload and
/// are dropped. Step indices are absolute (step 1 starts at the grid origin)
/// and may be < 1 for jobs before the origin. Throws DomainError when a row
/// still has queue time.
JobTable discretize(const ingest::RawJobTable& table, const TimeGrid& grid);

/// Truncates jobs to the baseline running steps inside `horizon`; jobs that do
/// not run inside it are dropped. Indices stay absolute.
JobTable partition_to_horizon(const JobTable& table, StepRange horizon);

/// Shifts step indices so the table span starts at step 1.
JobTable to_local(const JobTable& table);

struct AggregationOptions {
  int clusters_per_day = 100;
  std::uint64_t seed = 0;
};

/// Clusters each calendar day's jobs on (start, completion) step and replaces
/// each cluster by one job spanning it whose resources keep the cluster's
/// workload. Days are counted from `table.span.first`.
JobTable aggregate_daily(const JobTable& table, int steps_per_day, const AggregationOptions& options);

/// Utilization and power of the full-rate, zero-queue schedule over steps
/// 1..grid.steps. Throws DataError when utilization exceeds 1 anywhere.
BaselineProfile baseline_profile(const JobTable& table, const DataCenterSpec& spec, const TimeGrid& grid);

/// One optimization horizon, with jobs re-indexed to 1..T.
struct Horizon {
  int index = 0;
  StepRange absolute;
  JobTable jobs;
  BaselineProfile baseline;
  int clusters_per_day = 0;  // effective count after refinement, 0 without aggregation
};

/// Splits a discretized dataset into consecutive non-overlapping horizons of
/// `grid.steps` steps (a trailing partial horizon is ignored), optionally
/// aggregating each one (clusters_per_day <= 0 disables aggregation). A
/// horizon whose aggregated baseline exceeds the capacity is re-aggregated
/// with twice the clusters until it fits.
std::vector<Horizon> prepare_horizons(const JobTable& dataset, const DataCenterSpec& spec, const TimeGrid& grid,
                                      const AggregationOptions& aggregation);

/// Step-indexed CSV `id,submit_step,complete_step,compute_steps,resources`.
void write_job_table(const JobTable& table, std::ostream& out);
JobTable read_job_table(const std::filesystem::path& path);

}  // namespace dcflex::prep
