#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dcflex/core/rng.hpp"
#include "dcflex/core/text.hpp"
#include "dcflex/core/types.hpp"

using namespace dcflex;

TEST(TimeGrid, DefaultIsTenDaysOfQuarterHours) {
  TimeGrid g;
  EXPECT_EQ(g.step_minutes, 15.0);
  EXPECT_EQ(g.steps, 960);
  EXPECT_EQ(g.steps_per_day(), 96);
  EXPECT_DOUBLE_EQ(g.horizon_days(), 10.0);
  EXPECT_DOUBLE_EQ(g.step_hours(), 0.25);
}

TEST(TimeGrid, RejectsBadValues) {
  TimeGrid g;
  g.step_minutes = 0;
  EXPECT_THROW(g.validate(), DomainError);
  g.step_minutes = 7;
  EXPECT_THROW(g.steps_per_day(), DomainError);
  g = TimeGrid{};
  g.steps = 0;
  EXPECT_THROW(g.validate(), DomainError);
}

TEST(ActivationsPerWindow, RoundsFrequencyToHorizon) {
  EXPECT_EQ(activations_per_window(2920, 10), 80);
  EXPECT_EQ(activations_per_window(365, 10), 10);
  EXPECT_EQ(activations_per_window(36.5, 10), 1);
  EXPECT_EQ(activations_per_window(1, 10), 1);  // clamped
  EXPECT_THROW(activations_per_window(0, 10), DomainError);
}

TEST(DurationToSteps, NearestWithMinimumOne) {
  TimeGrid g;
  EXPECT_EQ(duration_to_steps(0.25, g), 1);
  EXPECT_EQ(duration_to_steps(2.0, g), 8);
  EXPECT_EQ(duration_to_steps(0.2, g), 1);
  EXPECT_EQ(duration_to_steps(0.01, g), 1);
  EXPECT_EQ(duration_to_steps(0.125, g), 1);  // 0.5 rounds away from zero
  EXPECT_THROW(duration_to_steps(0.0, g), DomainError);
}

TEST(RoundHalfAway, Halves) {
  EXPECT_EQ(round_half_away(0.5), 1);
  EXPECT_EQ(round_half_away(1.5), 2);
  EXPECT_EQ(round_half_away(2.5), 3);
  EXPECT_EQ(round_half_away(-0.5), -1);
  EXPECT_EQ(round_half_away(0.49), 0);
}

TEST(ServiceSpec, FitsOrThrows) {
  TimeGrid g;
  auto s = ServiceSpec::make(0.25, 2920, g);
  EXPECT_EQ(s.window_count, 80);
  EXPECT_EQ(s.duration_steps, 1);
  EXPECT_LE(s.window_count * s.duration_steps, g.steps);
  EXPECT_THROW(ServiceSpec::make(4, 2920, g), DomainError);  // 80 x 16 steps > 960
  TimeGrid small;
  small.steps = 10;
  EXPECT_THROW(ServiceSpec::make(1, 365 * 100, small), DomainError);
}

TEST(ActivationPlan, Validity) {
  ActivationPlan p{{{1, 2}, {4, 5}}};
  EXPECT_TRUE(p.valid_for(5));
  EXPECT_FALSE(p.valid_for(4));
  ActivationPlan overlap{{{1, 2}, {2, 3}}};
  EXPECT_FALSE(overlap.valid_for(10));
  ActivationPlan uneven{{{1, 2}, {4, 4}}};
  EXPECT_FALSE(uneven.valid_for(10));
  EXPECT_TRUE(ActivationPlan{}.valid_for(1));
}

TEST(DataCenterSpec, Validation) {
  DataCenterSpec s;
  EXPECT_NO_THROW(s.validate());
  s.preempt_budget_frac = 0;
  EXPECT_THROW(s.validate(), DomainError);
  s = DataCenterSpec{};
  s.total_resources = 0;
  EXPECT_THROW(s.validate(), DomainError);
  s = DataCenterSpec{};
  s.max_delay_frac = -0.1;
  EXPECT_THROW(s.validate(), DomainError);
  EXPECT_DOUBLE_EQ(default_preempt_overhead_min(DeviceClass::gpu_ai), 1.5);
  EXPECT_DOUBLE_EQ(default_preempt_overhead_min(DeviceClass::cpu_general), 0.5);
  EXPECT_EQ(parse_device_class("gpu"), DeviceClass::gpu_ai);
  EXPECT_EQ(parse_device_class(to_string(DeviceClass::cpu_general)), DeviceClass::cpu_general);
  EXPECT_THROW(parse_device_class("tpu"), DomainError);
}

TEST(JobRecord, WorkloadAndRun) {
  JobRecord j{"a", 3, 6, 4, 2.5};
  EXPECT_DOUBLE_EQ(j.workload(), 10.0);
  EXPECT_EQ(j.baseline_run(), (StepRange{3, 6}));
  JobTable t{{j, j}, {1, 10}};
  EXPECT_DOUBLE_EQ(t.total_workload(), 20.0);
}

TEST(Rng, DerivedSeedsAreStableAndDistinct) {
  EXPECT_EQ(derive_seed(1, 0, "a"), derive_seed(1, 0, "a"));
  EXPECT_NE(derive_seed(1, 0, "a"), derive_seed(1, 1, "a"));
  EXPECT_NE(derive_seed(1, 0, "a"), derive_seed(2, 0, "a"));
  EXPECT_NE(derive_seed(1, 0, "a"), derive_seed(1, 0, "b"));
  EXPECT_EQ(fnv1a64(""), 0xCBF29CE484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xAF63DC4C8601EC8CULL);
}

TEST(Text, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5, 0.25}) {
    auto back = parse_number(format_number(v));
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, v);
  }
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(*parse_number(" +3.5 "), 3.5);
  EXPECT_FALSE(parse_number("3.5x"));
  EXPECT_FALSE(parse_number(""));
}

TEST(Text, SplitAndLists) {
  auto parts = split(" a , b,,c ", ',');
  ASSERT_EQ(parts.size(), 4u);
  EXPECT_EQ(parts[0], "a");
  EXPECT_EQ(parts[2], "");
  EXPECT_EQ(parse_number_list("0.25, 1,2"), (std::vector<double>{0.25, 1, 2}));
  EXPECT_TRUE(parse_number_list("").empty());
  EXPECT_THROW(parse_number_list("1,x"), DomainError);
}
