#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dcflex/ingest/cloud_pricing.hpp"
#include "dcflex/ingest/csv.hpp"
#include "dcflex/ingest/job_trace.hpp"
#include "dcflex/ingest/price_series.hpp"
#include "temp_dir.hpp"

using namespace dcflex;
using namespace dcflex::ingest;
using fixtures::TempDir;

namespace {

constexpr std::int64_t kDay = 86400;
constexpr const char* kHeader = "id,submit_unix_s,start_unix_s,end_unix_s,resources\n";

// One job per day covering the whole day with `load[d]` resources.
std::string daily_trace(const std::vector<double>& load, std::int64_t origin) {
  std::string s = kHeader;
  for (std::size_t d = 0; d < load.size(); ++d) {
    if (load[d] <= 0) continue;
    std::int64_t b = origin + static_cast<std::int64_t>(d) * kDay;
    s += "d" + std::to_string(d) + "," + std::to_string(b) + "," + std::to_string(b) + "," +
         std::to_string(b + kDay) + "," + std::to_string(load[d]) + "\n";
  }
  return s;
}

}  // namespace

TEST(Csv, QuotedFieldsAndBom) {
  auto t = parse_csv("\xEF\xBB\xBF" "a,b\n\"x, y\",\"say \"\"hi\"\"\"\n\n1,2\n");
  ASSERT_EQ(t.header.size(), 2u);
  EXPECT_EQ(t.header[0], "a");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "x, y");
  EXPECT_EQ(t.rows[0][1], "say \"hi\"");
  EXPECT_EQ(t.line_numbers[1], 4u);
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_EQ(t.column("z"), npos);
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("plain"), "plain");
}

TEST(JobTrace, ParsesWellFormedRows) {
  TempDir dir;
  auto p = dir.write("t.csv", std::string(kHeader) + "a,0,10,20,1\nb,5,5,50,2\nc,1,2,3,0.5\n");
  auto t = parse_job_trace(p);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.dropped, 0u);
  EXPECT_EQ(t.rows[1], (RawJob{"b", 5, 5, 50, 2.0}));
}

TEST(JobTrace, DropsInvalidRows) {
  TempDir dir;
  auto p = dir.write("t.csv", std::string(kHeader) +
                                  "a,0,10,20,1\n"
                                  "b,0,30,20,1\n"   // end < start
                                  "c,0,-1,20,1\n"   // negative
                                  "d,0,1,20,0\n"    // no resources
                                  "e,0,1,,1\n"      // missing
                                  "f,0,1,2,x\n");   // non-numeric
  auto t = parse_job_trace(p);
  EXPECT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.dropped, 5u);
}

TEST(JobTrace, SchemaMapsColumnsAndMissingColumnsThrow) {
  TempDir dir;
  auto p = dir.write("t.csv", "job,begin,finish,gpus\nx,100,200,4\n");
  auto schema = TraceSchema::parse("id=job,submit=,start=begin,end=finish,resources=gpus");
  auto t = parse_job_trace(p, schema);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].submit_unix_s, 100);
  EXPECT_THROW(parse_job_trace(p), DataError);
  EXPECT_THROW(TraceSchema::parse("colour=x"), DomainError);
}

TEST(JobTrace, EmptyOrUnreadable) {
  TempDir dir;
  EXPECT_THROW(parse_job_trace(dir.write("e.csv", kHeader)), DataError);
  EXPECT_THROW(parse_job_trace(dir / "missing.csv"), DataError);
}

TEST(JobTrace, SerializeRoundTripIsExact) {
  TempDir dir;
  auto p = dir.write("t.csv", std::string(kHeader) + "a,0,10,20,1.5\n\"b,c\",5,5,50,0.1\n");
  auto t = parse_job_trace(p);
  write_job_trace(t, dir / "u.csv");
  auto u = parse_job_trace(dir / "u.csv");
  EXPECT_EQ(t.rows, u.rows);
  std::ostringstream a, b;
  write_job_trace(t, a);
  write_job_trace(u, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(JobTrace, PaiScaleRowCount) {
  TempDir dir;
  const std::size_t rows = 962602;
  {
    std::ofstream out(dir / "big.csv");
    out << kHeader;
    char line[96];
    for (std::size_t i = 0; i < rows; ++i) {
      long long s = 1'600'000'000LL + static_cast<long long>(i) * 7;
      std::snprintf(line, sizeof line, "j%zu,%lld,%lld,%lld,%d\n", i, s, s + 60, s + 3660, static_cast<int>(i % 8) + 1);
      out << line;
    }
    out << "bad,1,2,1,1\n";
  }
  auto t = parse_job_trace(dir / "big.csv");
  EXPECT_EQ(t.rows.size(), rows);
  EXPECT_EQ(t.dropped, 1u);
  EXPECT_EQ(t.rows.back().id, "j962601");
}

TEST(SelectWindow, UniformTraceKeepsLastDays) {
  TempDir dir;
  const std::int64_t origin = 1'704'067'200;
  auto t = parse_job_trace(dir.write("t.csv", daily_trace(std::vector<double>(100, 4.0), origin)));
  TimeGrid g;
  g.origin_unix_s = origin;
  auto w = select_window(t, 80, g);
  ASSERT_TRUE(w.window);
  EXPECT_EQ(w.window->begin_unix_s, origin + 20 * kDay);
  EXPECT_EQ(w.window->seconds(), 80 * kDay);
  EXPECT_EQ(w.rows.size(), 80u);
}

TEST(SelectWindow, TrimsUnderusedLeadingDays) {
  TempDir dir;
  const std::int64_t origin = 1'704'067'200;
  std::vector<double> load(20, 10.0);
  for (int d = 0; d < 5; ++d) load[static_cast<std::size_t>(d)] = 0.1;
  load[19] = 0.2;
  auto t = parse_job_trace(dir.write("t.csv", daily_trace(load, origin)));
  TimeGrid g;
  g.origin_unix_s = origin;
  // Mean daily load is (5 * 0.1 + 14 * 10 + 0.2) / 20; days 0-4 and 19 fall below half of it.
  auto load_by_day = daily_load(t, origin);
  auto [lo, hi] = trimmed_day_range(load_by_day, 0.5);
  EXPECT_EQ(lo, 5u);
  EXPECT_EQ(hi, 19u);
  auto w = select_window(t, 14, g);
  EXPECT_EQ(w.window->begin_unix_s, origin + 5 * kDay);
  EXPECT_EQ(w.window->end_unix_s, origin + 19 * kDay);
  EXPECT_THROW(select_window(t, 15, g), DataError);
}

TEST(SelectWindow, ShortTraceThrows) {
  TempDir dir;
  auto t = parse_job_trace(dir.write("t.csv", daily_trace(std::vector<double>(30, 1.0), 0)));
  EXPECT_THROW(select_window(t, 80, TimeGrid{}), DataError);
}

TEST(SelectWindow, ClipsJobsToWindow) {
  TempDir dir;
  const std::int64_t origin = 0;
  std::string s = daily_trace(std::vector<double>(12, 2.0), origin);
  s += "long,0,0," + std::to_string(12 * kDay) + ",1\n";
  auto t = parse_job_trace(dir.write("t.csv", s));
  auto w = select_window(t, 10, TimeGrid{});
  for (const auto& r : w.rows) {
    EXPECT_GE(r.start_unix_s, w.window->begin_unix_s);
    EXPECT_LE(r.end_unix_s, w.window->end_unix_s);
    EXPECT_LE(r.submit_unix_s, r.start_unix_s);
  }
}

TEST(CloudPricing, DerivesPerUnitValues) {
  TempDir dir;
  const std::string header =
      "Provider,Type,Model,Number of vCPU/GPU,Memory,Unit Price,Total device price,CPU Score,GPU FP32,GPU FP16,"
      "Unit Rated Power,Total Rated Power,Notes\n";
  auto p = dir.write("p.csv", header +
                                  "G,gpu,A,4,80,,8,,2,4,,1200,\n"
                                  "C,cpu,B,32*,64,0.05,,30000,,,,360,\n"
                                  "C,cpu,NoSpeed,8,64,0.05,,,,,,100,\n"
                                  "C,cpu,NoPower,8,64,0.05,,1000,,,,,\n");
  auto t = parse_cloud_pricing(p);
  ASSERT_EQ(t.options.size(), 2u);
  EXPECT_EQ(t.dropped, 2u);
  const auto& gpu = t.options[0];
  EXPECT_EQ(gpu.device_type, DeviceType::gpu);
  EXPECT_DOUBLE_EQ(gpu.unit_price, 2.0);
  EXPECT_DOUBLE_EQ(gpu.speed, 8.0 / 3.0);
  EXPECT_DOUBLE_EQ(gpu.unit_power_w, 300.0);
  const auto& cpu = t.options[1];
  EXPECT_TRUE(cpu.estimated);
  EXPECT_EQ(cpu.unit_count, 32);
  EXPECT_DOUBLE_EQ(cpu.unit_power_w, 11.25);
  EXPECT_DOUBLE_EQ(cpu.unit_price, 0.05);
}

TEST(CloudPricing, ZeroCountAndMalformedRowsThrow) {
  TempDir dir;
  const std::string header = "a,b,c,d,e,f,g,h,i,j,k,l,m\n";
  EXPECT_THROW(parse_cloud_pricing(dir.write("z.csv", header + "G,gpu,A,0,80,1,,,2,4,300,,\n")), DataError);
  EXPECT_THROW(parse_cloud_pricing(dir.write("m.csv", header + "G,gpu,A\n")), DataError);
  EXPECT_THROW(parse_cloud_pricing(dir.write("t.csv", header + "G,tpu,A,1,80,1,,,2,4,300,,\n")), DataError);
}

TEST(PriceSeries, ConvertsAndSorts) {
  TempDir dir;
  auto p = dir.write("dfs.csv",
                     "timestamp,price\n2023-01-02T18:00:00Z,3\n2023-01-01T17:30:00+01:00,3\n2023-01-01,3\n");
  auto s = parse_price_series(p, 1.267);
  EXPECT_EQ(s.market, "dfs");
  ASSERT_EQ(s.samples.size(), 3u);
  for (const auto& x : s.samples) EXPECT_NEAR(x.price, 3.8, 0.01);
  EXPECT_TRUE(std::is_sorted(s.samples.begin(), s.samples.end(),
                             [](auto& a, auto& b) { return a.unix_s < b.unix_s; }));
  EXPECT_EQ(s.samples[0].timestamp, "2023-01-01");
}

TEST(PriceSeries, Errors) {
  TempDir dir;
  EXPECT_THROW(parse_price_series(dir.write("e.csv", "")), DataError);
  EXPECT_THROW(parse_price_series(dir.write("b.csv", "2023-01-01,abc\n")), DataError);
}

TEST(Iso8601, Forms) {
  EXPECT_EQ(parse_iso8601("1970-01-01"), 0);
  EXPECT_EQ(parse_iso8601("1970-01-01T00:01:00Z"), 60);
  EXPECT_EQ(parse_iso8601("1970-01-01 01:00"), 3600);
  EXPECT_EQ(parse_iso8601("1970-01-01T01:00:00+01:00"), 0);
  EXPECT_EQ(parse_iso8601("1970-01-01T00:00:00.750-0030"), 1800);
  EXPECT_EQ(parse_iso8601("2024-02-29"), 1709164800);
  EXPECT_THROW(parse_iso8601("2023-02-29"), DataError);
  EXPECT_THROW(parse_iso8601("yesterday"), DataError);
}
