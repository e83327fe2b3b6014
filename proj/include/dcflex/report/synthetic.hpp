#pragma once

#include <cstdint>
#include <string>

#include "dcflex/core/types.hpp"
#include "dcflex/ingest/job_trace.hpp"

namespace dcflex::report {

enum class TraceProfile { ai_like, general_like };

std::string to_string(TraceProfile profile);
TraceProfile parse_trace_profile(const std::string& text);

/// Synthetic job trace starting at `grid.origin_unix_s`, filled greedily
/// toward a utilization target of `spec.total_resources`.
///
/// ai_like: long jobs (4 to 48 hours) holding about 80% utilization with
/// little variation. general_like: mostly short jobs under a daily cycle
/// around 60%. Start times sit on grid boundaries and durations are whole
/// steps; submission precedes start by up to an hour. Throws DomainError for
/// fewer than 10 days.
ingest::RawJobTable generate_synthetic_trace(TraceProfile profile, int days, std::uint64_t seed,
                                             const TimeGrid& grid, const DataCenterSpec& spec);

}  // namespace dcflex::report
