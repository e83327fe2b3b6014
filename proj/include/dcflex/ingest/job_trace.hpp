#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcflex/core/types.hpp"

namespace dcflex::ingest {

/// One job as recorded by a scheduler, times in Unix seconds.
struct RawJob {
  std::string id;
  std::int64_t submit_unix_s = 0;
  std::int64_t start_unix_s = 0;
  std::int64_t end_unix_s = 0;
  double resources = 1.0;

  friend bool operator==(const RawJob&, const RawJob&) = default;
};

/// Half-open time interval [begin, end) in Unix seconds.
struct TimeWindow {
  std::int64_t begin_unix_s = 0;
  std::int64_t end_unix_s = 0;

  std::int64_t seconds() const { return end_unix_s - begin_unix_s; }
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct RawJobTable {
  std::vector<RawJob> rows;
  std::size_t dropped = 0;            // malformed rows skipped while parsing
  std::optional<TimeWindow> window;   // set once a window has been selected
};

/// Maps canonical fields to the column names of a trace file. An empty
/// `submit` column means the trace has no submission times (start is used).
struct TraceSchema {
  std::string id = "id";
  std::string submit = "submit_unix_s";
  std::string start = "start_unix_s";
  std::string end = "end_unix_s";
  std::string resources = "resources";

  /// Overrides from "field=column,field=column"; unknown fields throw DomainError.
  static TraceSchema parse(const std::string& spec);
};

/// Reads a trace CSV with a header row. Rows with missing, non-numeric or
/// negative fields, end < start, or resources <= 0 are dropped and counted.
RawJobTable parse_job_trace(const std::filesystem::path& path, const TraceSchema& schema = {});

/// Writes the canonical CSV `id,submit_unix_s,start_unix_s,end_unix_s,resources`.
void write_job_trace(const RawJobTable& table, std::ostream& out);
void write_job_trace(const RawJobTable& table, const std::filesystem::path& path);

/// Per-day load (resource-days) on day boundaries origin + k * 86400.
struct DailyLoad {
  std::int64_t first_day_unix_s = 0;
  std::vector<double> load;
};

DailyLoad daily_load(const RawJobTable& table, std::int64_t origin_unix_s);

/// Days [lo, hi) of `load` left after trimming leading and trailing days whose
/// load is below `trim_fraction` times the mean daily load.
std::pair<std::size_t, std::size_t> trimmed_day_range(const DailyLoad& load, double trim_fraction);

/// Keeps the most recent `days` whole days after trimming under-utilized
/// boundary days. Jobs are clipped to the window. Throws DataError when the
/// trimmed trace is shorter than `days`.
RawJobTable select_window(const RawJobTable& table, int days, const TimeGrid& grid, double trim_fraction = 0.5);

}  // namespace dcflex::ingest
