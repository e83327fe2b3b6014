#include "dcflex/ingest/job_trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "dcflex/core/text.hpp"
#include "dcflex/ingest/csv.hpp"

namespace dcflex::ingest {
namespace {

constexpr std::int64_t kDay = 86400;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

std::optional<std::int64_t> parse_seconds(std::string_view text) {
  auto v = parse_number(text);
  if (!v || !std::isfinite(*v) || *v < 0.0 || *v > 9.0e15) return std::nullopt;
  return static_cast<std::int64_t>(std::llround(*v));
}

}  // namespace

TraceSchema TraceSchema::parse(const std::string& spec) {
  TraceSchema schema;
  if (trim(spec).empty()) return schema;
  for (const auto& item : split(spec, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("schema entry must be field=column: '" + item + "'");
    std::string field(trim(std::string_view(item).substr(0, eq)));
    std::string column(trim(std::string_view(item).substr(eq + 1)));
    if (field == "id") schema.id = column;
    else if (field == "submit") schema.submit = column;
    else if (field == "start") schema.start = column;
    else if (field == "end") schema.end = column;
    else if (field == "resources") schema.resources = column;
    else throw DomainError("unknown schema field '" + field + "'");
  }
  return schema;
}

RawJobTable parse_job_trace(const std::filesystem::path& path, const TraceSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open trace " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw DataError("trace " + path.string() + " is empty");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  CsvTable head;
  head.header = parse_csv_line(line);

  auto need = [&](const std::string& name) {
    auto idx = head.column(name);
    if (idx == npos) throw DataError("trace " + path.string() + " lacks column '" + name + "'");
    return idx;
  };
  const std::size_t c_id = need(schema.id);
  const std::size_t c_start = need(schema.start);
  const std::size_t c_end = need(schema.end);
  const std::size_t c_res = need(schema.resources);
  const std::size_t c_submit = schema.submit.empty() ? npos : need(schema.submit);
  const std::size_t width =
      std::max({c_id, c_start, c_end, c_res, c_submit == npos ? std::size_t{0} : c_submit}) + 1;

  RawJobTable table;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto f = parse_csv_line(line);
    if (f.size() < width || f[c_id].empty()) {
      ++table.dropped;
      continue;
    }
    auto start = parse_seconds(f[c_start]);
    auto end = parse_seconds(f[c_end]);
    auto submit = c_submit == npos ? start : parse_seconds(f[c_submit]);
    auto res = parse_number(f[c_res]);
    if (!start || !end || !submit || !res || !std::isfinite(*res) || *res <= 0.0 || *end < *start) {
      ++table.dropped;
      continue;
    }
    table.rows.push_back(RawJob{f[c_id], *submit, *start, *end, *res});
  }
  if (table.rows.empty()) throw DataError("trace " + path.string() + " has no valid rows");
  return table;
}

void write_job_trace(const RawJobTable& table, std::ostream& out) {
  out << "id,submit_unix_s,start_unix_s,end_unix_s,resources\n";
  for (const auto& r : table.rows) {
    out << csv_escape(r.id) << ',' << r.submit_unix_s << ',' << r.start_unix_s << ',' << r.end_unix_s << ','
        << format_number(r.resources) << '\n';
  }
}

void write_job_trace(const RawJobTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_job_trace(table, out);
}

DailyLoad daily_load(const RawJobTable& table, std::int64_t origin_unix_s) {
  DailyLoad result;
  if (table.rows.empty()) return result;
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for (const auto& r : table.rows) {
    lo = std::min(lo, r.start_unix_s);
    hi = std::max(hi, r.end_unix_s);
  }
  std::int64_t first = floor_div(lo - origin_unix_s, kDay);
  std::int64_t last = floor_div(hi - origin_unix_s - 1, kDay);  // day containing the last busy second
  last = std::max(last, first);
  result.first_day_unix_s = origin_unix_s + first * kDay;
  result.load.assign(static_cast<std::size_t>(last - first + 1), 0.0);
  for (const auto& r : table.rows) {
    for (std::int64_t d = floor_div(r.start_unix_s - result.first_day_unix_s, kDay);; ++d) {
      std::int64_t day_begin = result.first_day_unix_s + d * kDay;
      if (day_begin >= r.end_unix_s || d >= static_cast<std::int64_t>(result.load.size())) break;
      std::int64_t overlap = std::min(r.end_unix_s, day_begin + kDay) - std::max(r.start_unix_s, day_begin);
      if (overlap > 0) result.load[static_cast<std::size_t>(d)] += r.resources * overlap / double(kDay);
    }
  }
  return result;
}

std::pair<std::size_t, std::size_t> trimmed_day_range(const DailyLoad& load, double trim_fraction) {
  std::size_t lo = 0, hi = load.load.size();
  if (hi == 0) return {0, 0};
  double mean = 0.0;
  for (double l : load.load) mean += l;
  mean /= static_cast<double>(hi);
  double threshold = trim_fraction * mean;
  while (lo < hi && load.load[lo] < threshold) ++lo;
  while (hi > lo && load.load[hi - 1] < threshold) --hi;
  return {lo, hi};
}

RawJobTable select_window(const RawJobTable& table, int days, const TimeGrid& grid, double trim_fraction) {
  if (days < 1) throw DomainError("window must span at least one day");
  grid.steps_per_day();  // the day must be a whole number of steps
  DailyLoad load = daily_load(table, grid.origin_unix_s);
  auto [lo, hi] = trimmed_day_range(load, trim_fraction);
  if (hi - lo < static_cast<std::size_t>(days)) {
    throw DataError("trace covers " + std::to_string(hi - lo) + " usable days, " + std::to_string(days) +
                    " requested");
  }
  TimeWindow window{load.first_day_unix_s + static_cast<std::int64_t>(hi - days) * kDay,
                    load.first_day_unix_s + static_cast<std::int64_t>(hi) * kDay};

  RawJobTable out;
  out.dropped = table.dropped;
  out.window = window;
  for (const auto& r : table.rows) {
    bool overlaps = r.start_unix_s == r.end_unix_s
                        ? (r.start_unix_s >= window.begin_unix_s && r.start_unix_s < window.end_unix_s)
                        : (r.end_unix_s > window.begin_unix_s && r.start_unix_s < window.end_unix_s);
    if (!overlaps) continue;
    RawJob c = r;
    c.start_unix_s = std::max(r.start_unix_s, window.begin_unix_s);
    c.end_unix_s = std::min(r.end_unix_s, window.end_unix_s);
    c.submit_unix_s = std::clamp(r.submit_unix_s, window.begin_unix_s, c.start_unix_s);
    out.rows.push_back(std::move(c));
  }
  return out;
}

}  // namespace dcflex::ingest
