#include <gtest/gtest.h>

#include <atomic>
#include <map>
#include <random>
#include <stdexcept>

#include "dcflex/model/schedule_model.hpp"
#include "dcflex/solve/activation.hpp"
#include "dcflex/solve/backend.hpp"
#include "dcflex/solve/solve.hpp"
#include "dcflex/solve/worker_pool.hpp"
#include "fixtures.hpp"

using namespace dcflex;
using namespace dcflex::model;
using namespace dcflex::solve;

namespace {

const HighsBackend kBackend;

}  // namespace

TEST(HighsBackendTest, SmallLp) {
  LinearModel m;
  m.set_sense(Sense::maximize);
  int x = m.add_variable("x", 0, kInf, 1);
  int y = m.add_variable("y", 0, kInf, 1);
  m.add_le("a", {{x, 1}, {y, 2}}, 4);
  m.add_le("b", {{x, 3}, {y, 1}}, 6);
  auto r = kBackend.solve(m, {});
  ASSERT_EQ(r.status, SolveStatus::optimal);
  EXPECT_NEAR(r.objective, 2.8, 1e-9);
  EXPECT_NEAR(r.values[0], 1.6, 1e-9);
  EXPECT_NEAR(r.values[1], 1.2, 1e-9);
}

TEST(HighsBackendTest, BinaryKnapsack) {
  LinearModel m;
  m.set_sense(Sense::maximize);
  std::vector<double> value{6, 5, 4}, weight{5, 4, 3};
  std::vector<Term> cap;
  for (int i = 0; i < 3; ++i) {
    int v = m.add_variable("b" + std::to_string(i), 0, 1, value[static_cast<std::size_t>(i)], VarType::binary);
    cap.push_back({v, weight[static_cast<std::size_t>(i)]});
  }
  m.add_le("cap", cap, 7);
  auto r = kBackend.solve(m, {});
  ASSERT_EQ(r.status, SolveStatus::optimal);
  EXPECT_NEAR(r.objective, 9.0, 1e-9);  // items 1 and 2
}

TEST(HighsBackendTest, InfeasibleAndUnbounded) {
  LinearModel inf;
  int a = inf.add_variable("a", 0, 1);
  inf.add_ge("r", {{a, 1}}, 2);
  auto r = kBackend.solve(inf, {});
  EXPECT_EQ(r.status, SolveStatus::infeasible);
  EXPECT_FALSE(r.has_solution);

  LinearModel unb;
  unb.set_sense(Sense::maximize);
  int b = unb.add_variable("b", 0, kInf, 1);
  unb.add_ge("r", {{b, 1}}, 0);
  EXPECT_EQ(kBackend.solve(unb, {}).status, SolveStatus::unbounded);
}

TEST(SolveSchedule, TinyAFlexmax) {
  auto p = fixtures::tiny_a();
  auto r = solve::solve(build_flexmax(p), kBackend);
  ASSERT_EQ(r.status, SolveStatus::optimal);
  EXPECT_NEAR(r.solution.mean_flex_kw, 2.0, 1e-6);
  EXPECT_EQ(fixtures::check_schedule(p, r.solution, 1e-6), "");
}

TEST(SolveSchedule, TinyACostmin) {
  auto p = fixtures::tiny_a();
  auto r = solve::solve(build_costmin(p, {}, {2.0, true, -1.0}), kBackend);
  ASSERT_EQ(r.status, SolveStatus::optimal);
  EXPECT_NEAR(r.solution.total_cost, 0.25, 1e-6);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_NEAR(r.solution.x[j][0], 0.0, 1e-6);
    EXPECT_NEAR(r.solution.x[j][1], 1.0, 1e-6);
    EXPECT_NEAR(r.solution.x[j][2], 1.0, 1e-6);
    EXPECT_NEAR(r.solution.x[j][3], 0.0, 1e-6);
    EXPECT_NEAR(r.solution.delay_frac[j], 0.5, 1e-6);
    EXPECT_NEAR(r.solution.end_marker[j], 4.0, 1e-6);
  }
  EXPECT_EQ(fixtures::check_schedule(p, r.solution, 1e-6), "");
}

TEST(SolveSchedule, UnreachableTargetFlagged) {
  auto p = fixtures::tiny_a();
  auto r = solve::solve(build_costmin(p, {}, {2.5, false, -1.0}), kBackend);
  EXPECT_EQ(r.status, SolveStatus::infeasible);
  EXPECT_TRUE(r.target_unreachable);
  EXPECT_FALSE(r.has_solution);
}

TEST(SolveSchedule, ZeroDelayNoFlexibility) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    auto p = fixtures::random_problem(rng, {});
    p.spec.max_delay_frac = 0.0;
    auto r = solve::solve(build_flexmax(p), kBackend);
    ASSERT_EQ(r.status, SolveStatus::optimal) << "instance " << i;
    EXPECT_NEAR(r.solution.mean_flex_kw, 0.0, 1e-6) << "instance " << i;
  }
}

TEST(SolveSchedule, RandomSchedulesObeyRules) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    auto p = fixtures::random_problem(rng, {});
    p.dq.enabled = i % 3 == 0;
    auto fm = solve::solve(build_flexmax(p), kBackend);
    ASSERT_EQ(fm.status, SolveStatus::optimal) << "instance " << i;
    EXPECT_EQ(fixtures::check_schedule(p, fm.solution, 1e-6), "") << "flexmax instance " << i;
    EXPECT_GE(fm.solution.mean_flex_kw, -1e-9);

    const double target = 0.6 * fm.solution.mean_flex_kw;
    auto cm = solve::solve(build_costmin(p, {}, {target, !p.dq.enabled, -1.0}), kBackend);
    ASSERT_EQ(cm.status, SolveStatus::optimal) << "instance " << i;
    EXPECT_EQ(fixtures::check_schedule(p, cm.solution, 1e-6), "") << "costmin instance " << i;
    EXPECT_GE(cm.solution.mean_flex_kw, target - 1e-6);
    if (!p.dq.enabled) {
      double bound = tightening_bound({}, p.spec, p.plan, p.grid, target);
      EXPECT_GE(cm.solution.total_cost, bound - 1e-6) << "instance " << i;
    }
  }
}

TEST(Activation, WindowsAreDisjointAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto plan = sample_activations(96, 7, 5, seed);
    ASSERT_EQ(plan.count(), 7u);
    EXPECT_EQ(plan.duration_steps(), 5);
    EXPECT_TRUE(plan.valid_for(96));
    EXPECT_EQ(plan.windows, sample_activations(96, 7, 5, seed).windows);
  }
  auto tight = sample_activations(10, 5, 2, 3);
  EXPECT_EQ(tight.windows, (std::vector<StepRange>{{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}}));
  EXPECT_TRUE(sample_activations(10, 0, 2, 3).windows.empty());
  EXPECT_THROW(sample_activations(10, 6, 2, 3), DomainError);
  EXPECT_THROW(sample_activations(10, 1, 0, 3), DomainError);
}

TEST(Activation, PlacementsAreUniform) {
  // T=5, two windows of 2 steps: exactly three placements.
  std::map<int, int> seen;
  const int draws = 30000;
  for (int s = 0; s < draws; ++s) {
    auto p = sample_activations(5, 2, 2, static_cast<std::uint64_t>(s) * 7919u + 1);
    ++seen[p.windows[0].first * 10 + p.windows[1].first];
  }
  ASSERT_EQ(seen.size(), 3u);
  EXPECT_EQ(seen.count(13) + seen.count(14) + seen.count(24), 3u);
  for (auto [key, n] : seen) EXPECT_NEAR(n / double(draws), 1.0 / 3.0, 0.02) << key;
}

TEST(Activation, StartDistributionIsFlatForOneWindow) {
  std::vector<int> hits(8, 0);
  for (int s = 0; s < 16000; ++s) ++hits[static_cast<std::size_t>(sample_activations(10, 1, 3, s).windows[0].first - 1)];
  for (int h : hits) EXPECT_NEAR(h / 16000.0, 1.0 / 8.0, 0.015);
}

TEST(WorkerPool, SlotsAndLowestError) {
  std::vector<int> out(50, 0);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));

  std::atomic<int> ran{0};
  try {
    parallel_for(20, 3, [&](std::size_t i) {
      ++ran;
      if (i == 7 || i == 13) throw std::runtime_error("task " + std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "task 7");
  }
  EXPECT_EQ(ran.load(), 20);
}
