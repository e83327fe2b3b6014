#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "dcflex/prep/kmeans.hpp"
#include "dcflex/prep/preprocess.hpp"
#include "dcflex/prep/stats.hpp"
#include "dcflex/report/synthetic.hpp"
#include "fixtures.hpp"
#include "temp_dir.hpp"

using namespace dcflex;
using namespace dcflex::prep;
using fixtures::job;

namespace {

ingest::RawJob raw(const std::string& id, std::int64_t start, std::int64_t end, double res) {
  return {id, start, start, end, res};
}

TimeGrid grid15(int steps = 96) {
  TimeGrid g;
  g.step_minutes = 15;
  g.steps = steps;
  g.origin_unix_s = 0;
  return g;
}

DataCenterSpec spec(double n, double g = 1.0, double fixed = 0.0) {
  DataCenterSpec s;
  s.total_resources = n;
  s.unit_power_kw = g;
  s.fixed_power_kw = fixed;
  return s;
}

}  // namespace

TEST(ZeroQueue, MovesSubmitToStart) {
  ingest::RawJobTable t;
  t.rows = {{"a", 0, 100, 200, 1.0}};
  auto z = zero_queue(t);
  EXPECT_EQ(z.rows[0].submit_unix_s, 100);
  EXPECT_EQ(z.rows[0].start_unix_s, 100);
}

TEST(Discretize, RoundsToNearestBoundary) {
  ingest::RawJobTable t;
  t.rows = {raw("a", 449, 1800, 2.0),    // 0..2 boundaries -> steps 1-2
            raw("b", 450, 2250, 1.0),    // 450/900 rounds half away -> boundary 1
            raw("c", 0, 100, 3.0),       // rounds to zero length
            raw("d", 900, 900, 1.0)};    // zero length: dropped
  auto jt = discretize(t, grid15());
  ASSERT_EQ(jt.jobs.size(), 3u);
  EXPECT_EQ(jt.jobs[0].submit_step, 1);
  EXPECT_EQ(jt.jobs[0].compute_steps, 2);
  EXPECT_EQ(jt.jobs[1].submit_step, 2);
  EXPECT_EQ(jt.jobs[1].compute_steps, 2);
  EXPECT_EQ(jt.jobs[2].compute_steps, 1);
  EXPECT_DOUBLE_EQ(jt.jobs[2].resources, 3.0 * 100.0 / 900.0);
  for (const auto& j : jt.jobs) EXPECT_EQ(j.complete_step, j.submit_step + j.compute_steps - 1);
}

TEST(Discretize, QueueTimeThrows) {
  ingest::RawJobTable t;
  t.rows = {{"a", 0, 10, 20, 1.0}};
  EXPECT_THROW(discretize(t, grid15()), DomainError);
}

TEST(Discretize, AlignedJobsKeepWorkload) {
  std::mt19937_64 rng(4);
  ingest::RawJobTable t;
  double workload_h = 0;
  for (int i = 0; i < 200; ++i) {
    std::int64_t s = std::uniform_int_distribution<int>(0, 500)(rng) * 900;
    std::int64_t e = s + std::uniform_int_distribution<int>(1, 40)(rng) * 900;
    double r = std::uniform_int_distribution<int>(1, 8)(rng);
    t.rows.push_back(raw("j" + std::to_string(i), s, e, r));
    workload_h += r * static_cast<double>(e - s) / 3600.0;
  }
  auto jt = discretize(t, grid15());
  EXPECT_NEAR(jt.total_workload() * 0.25, workload_h, 1e-9);
}

TEST(Discretize, WindowSetsSpan) {
  ingest::RawJobTable t;
  t.rows = {raw("a", 9000, 18000, 1)};
  t.window = ingest::TimeWindow{0, 86400};
  auto jt = discretize(t, grid15());
  EXPECT_EQ(jt.span, (StepRange{1, 96}));
}

TEST(Partition, ClipsAndDropsJobs) {
  JobTable t;
  t.jobs = {job("a", 1, 10, 1), job("b", 8, 5, 2), job("c", 20, 2, 1)};
  t.span = {1, 21};
  auto p = partition_to_horizon(t, {6, 12});
  ASSERT_EQ(p.jobs.size(), 2u);
  EXPECT_EQ(p.jobs[0].submit_step, 6);
  EXPECT_EQ(p.jobs[0].compute_steps, 5);
  EXPECT_EQ(p.jobs[1].submit_step, 8);
  EXPECT_EQ(p.jobs[1].complete_step, 12);
  auto l = to_local(p);
  EXPECT_EQ(l.span, (StepRange{1, 7}));
  EXPECT_EQ(l.jobs[0].submit_step, 1);
  EXPECT_EQ(l.jobs[1].submit_step, 3);
}

TEST(Baseline, UtilizationAndPower) {
  JobTable t;
  t.jobs = {job("a", 1, 2, 1), job("b", 2, 2, 2), job("early", -3, 2, 5)};
  auto b = baseline_profile(t, spec(4, 0.5, 1.0), fixtures::grid(4));
  std::vector<double> u{0.25, 0.75, 0.5, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(b.utilization[i], u[i]);
    EXPECT_DOUBLE_EQ(b.power_kw[i], 0.5 * 4 * u[i] + 1.0);
  }
  EXPECT_DOUBLE_EQ(b.mean_util, 0.375);
  EXPECT_NEAR(b.std_util, std::sqrt((0.125 * 0.125 + 0.375 * 0.375 * 2 + 0.125 * 0.125) / 4), 1e-12);
}

TEST(Baseline, OverCapacityThrows) {
  JobTable t;
  t.jobs = {job("a", 1, 2, 3)};
  EXPECT_THROW(baseline_profile(t, spec(2), fixtures::grid(2)), DataError);
}

TEST(Horizons, CountAndIndices) {
  JobTable t;
  for (int d = 0; d < 10; ++d) t.jobs.push_back(job("j" + std::to_string(d), 1 + d * 96, 96, 1));
  t.span = {1, 960};
  TimeGrid g = grid15(384);
  auto hs = prepare_horizons(t, spec(2), g, {0, 0});
  ASSERT_EQ(hs.size(), 2u);  // 960 / 384, trailing part ignored
  EXPECT_EQ(hs[1].absolute, (StepRange{385, 768}));
  EXPECT_EQ(hs[0].jobs.size(), 4u);
  for (const auto& h : hs) {
    EXPECT_EQ(h.baseline.utilization.size(), 384u);
    for (const auto& j : h.jobs.jobs) EXPECT_GE(j.submit_step, 1);
  }
}

TEST(Horizons, AggregationRefinedToFitCapacity) {
  dcflex::TimeGrid g;
  g.steps = 192;
  g.origin_unix_s = 0;
  dcflex::DataCenterSpec spec;
  spec.total_resources = 16;
  auto raw = dcflex::report::generate_synthetic_trace(dcflex::report::TraceProfile::general_like, 10, 3, g, spec);
  auto jobs = dcflex::prep::discretize(dcflex::prep::zero_queue(raw), g);
  jobs.span = {1, 5 * 192};
  int refined = 0;
  for (int k : {2, 4, 8}) {
    auto horizons = dcflex::prep::prepare_horizons(jobs, spec, g, {k, 11});
    ASSERT_EQ(horizons.size(), 5u);
    for (const auto& h : horizons) {
      double peak = *std::max_element(h.baseline.utilization.begin(), h.baseline.utilization.end());
      EXPECT_LE(peak, 1.0 + 1e-9);
      EXPECT_GE(h.clusters_per_day, k);
      refined += h.clusters_per_day > k;
    }
  }
  EXPECT_GT(refined, 0);
}

TEST(Aggregate, KeepsWorkloadPerDayAndBoundsClusters) {
  std::mt19937_64 rng(11);
  JobTable t;
  t.span = {1, 192};
  std::vector<double> work(2, 0.0);
  for (int i = 0; i < 300; ++i) {
    int day = i % 2;
    int s = day * 96 + std::uniform_int_distribution<int>(1, 80)(rng);
    int len = std::uniform_int_distribution<int>(1, 16)(rng);
    double r = std::uniform_int_distribution<int>(1, 4)(rng);
    t.jobs.push_back(job("j" + std::to_string(i), s, len, r));
    work[static_cast<std::size_t>(day)] += r * len;
  }
  auto a = aggregate_daily(t, 96, {10, 7});
  std::vector<double> after(2, 0.0);
  std::vector<int> count(2, 0);
  for (const auto& j : a.jobs) {
    int day = (j.submit_step - 1) / 96;
    after[static_cast<std::size_t>(day)] += j.workload();
    ++count[static_cast<std::size_t>(day)];
    EXPECT_EQ(j.complete_step, j.submit_step + j.compute_steps - 1);
  }
  for (int d = 0; d < 2; ++d) {
    EXPECT_NEAR(after[static_cast<std::size_t>(d)], work[static_cast<std::size_t>(d)], 1e-9);
    EXPECT_LE(count[static_cast<std::size_t>(d)], 10);
  }
  auto again = aggregate_daily(t, 96, {10, 7});
  ASSERT_EQ(again.jobs.size(), a.jobs.size());
  for (std::size_t i = 0; i < a.jobs.size(); ++i) EXPECT_EQ(again.jobs[i].id, a.jobs[i].id);
}

TEST(Aggregate, SmallDaysUnchanged) {
  JobTable t;
  t.span = {1, 96};
  t.jobs = {job("a", 1, 3, 1), job("b", 5, 3, 1)};
  auto a = aggregate_daily(t, 96, {5, 0});
  ASSERT_EQ(a.jobs.size(), 2u);
  EXPECT_EQ(a.jobs[0].id, "a");
  EXPECT_THROW(aggregate_daily(t, 96, {0, 0}), DomainError);
}

TEST(KMeans, SeparatesObviousClusters) {
  std::vector<Point2> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({double(i % 3), double(i % 2)});
  for (int i = 0; i < 10; ++i) pts.push_back({100.0 + i % 3, 100.0 + i % 2});
  auto labels = kmeans(pts, {2, 50, 3});
  for (int i = 1; i < 10; ++i) EXPECT_EQ(labels[static_cast<std::size_t>(i)], labels[0]);
  for (int i = 11; i < 20; ++i) EXPECT_EQ(labels[static_cast<std::size_t>(i)], labels[10]);
  EXPECT_NE(labels[0], labels[10]);
}

TEST(KMeans, FewDistinctPoints) {
  std::vector<Point2> pts(30, Point2{1.0, 2.0});
  pts.push_back({5.0, 5.0});
  auto labels = kmeans(pts, {10, 50, 1});
  std::set<int> distinct(labels.begin(), labels.end());
  EXPECT_EQ(distinct.size(), 2u);
}

TEST(Stats, PearsonMatchesHandComputation) {
  std::vector<double> x{1, 2, 3, 4}, y{2, 4, 5, 9};
  // mean x 2.5, mean y 5; sxy = 1.5*3+0.5*1+0.5*0+1.5*4 = 11; sxx = 5; syy = 9+1+0+16 = 26
  EXPECT_NEAR(pearson(x, y), 11.0 / std::sqrt(5.0 * 26.0), 1e-12);
  std::vector<double> c{1, 1, 1, 1};
  EXPECT_THROW(pearson(x, c), DomainError);
  EXPECT_THROW(pearson(std::vector<double>{1.0}, std::vector<double>{1.0}), DomainError);
}

TEST(Stats, UtilizationCorrelations) {
  std::vector<BaselineProfile> profiles(3);
  std::vector<FlexCostResult> results(3);
  for (int i = 0; i < 3; ++i) {
    profiles[static_cast<std::size_t>(i)].mean_util = 0.2 * (i + 1);
    profiles[static_cast<std::size_t>(i)].std_util = 0.1 * (3 - i);
    results[static_cast<std::size_t>(i)] = {1.0 - 0.2 * i, 0.1 * i * i};
  }
  auto c = utilization_stats(profiles, results);
  EXPECT_NEAR(c.mean_util_vs_flex, -1.0, 1e-12);
  EXPECT_NEAR(c.std_util_vs_flex, 1.0, 1e-12);
  EXPECT_GT(c.mean_util_vs_acof, 0.9);
  EXPECT_THROW(utilization_stats(std::span(profiles).first(2), std::span(results).first(2)), DomainError);
}

TEST(JobTableCsv, RoundTrip) {
  fixtures::TempDir dir;
  JobTable t;
  t.jobs = {job("a,b", 3, 2, 0.1), job("c", 1, 1, 2.5)};
  std::ostringstream os;
  write_job_table(t, os);
  auto back = read_job_table(dir.write("t.csv", os.str()));
  ASSERT_EQ(back.jobs.size(), 2u);
  EXPECT_EQ(back.jobs[0].id, "a,b");
  EXPECT_DOUBLE_EQ(back.jobs[0].resources, 0.1);
  EXPECT_EQ(back.span, (StepRange{1, 4}));
}
