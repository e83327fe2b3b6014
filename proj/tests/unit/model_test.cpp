#include <gtest/gtest.h>

#include <Highs.h>

#include <sstream>

#include "dcflex/model/lp_writer.hpp"
#include "dcflex/model/schedule_model.hpp"
#include "dcflex/solve/backend.hpp"
#include "fixtures.hpp"
#include "temp_dir.hpp"

using namespace dcflex;
using namespace dcflex::model;
using fixtures::job;

namespace {

int count_prefix(const LinearModel& m, const std::string& prefix, bool rows) {
  int n = 0;
  if (rows) {
    for (const auto& r : m.constraints()) n += r.name.rfind(prefix, 0) == 0;
  } else {
    for (const auto& v : m.variables()) n += v.name.rfind(prefix, 0) == 0;
  }
  return n;
}

}  // namespace

TEST(LinearModelTest, NamesAndValidation) {
  LinearModel m;
  int a = m.add_variable("a", 0, 1);
  int b = m.add_variable("b", 0, kInf, 2.0, VarType::binary);
  m.add_le("r", {{a, 1}, {b, 1}}, 1.5);
  EXPECT_EQ(m.variable_index("b"), b);
  EXPECT_EQ(m.variable_index("zz"), -1);
  EXPECT_EQ(m.constraint_index("r"), 0);
  EXPECT_EQ(m.num_binaries(), 1u);
  EXPECT_TRUE(m.is_mip());
  EXPECT_NO_THROW(m.validate());
  m.add_ge("bad", {{7, 1.0}}, 0.0);
  EXPECT_THROW(m.validate(), ModelError);
}

TEST(LinearModelTest, InvertedBoundsRejected) {
  LinearModel m;
  m.add_variable("a", 2, 1);
  EXPECT_THROW(m.validate(), ModelError);
}

TEST(AvailableSteps, RoundingAndClipping) {
  auto j = job("a", 3, 2, 1);
  EXPECT_EQ(available_steps(j, 0.0, 10), (StepRange{3, 4}));
  EXPECT_EQ(available_steps(j, 0.5, 10), (StepRange{3, 5}));
  EXPECT_EQ(available_steps(j, 0.25, 10), (StepRange{3, 5}));  // 2.5 rounds to 3
  EXPECT_EQ(available_steps(j, 0.2, 10), (StepRange{3, 4}));   // 2.4 rounds to 2
  EXPECT_EQ(available_steps(j, 1.0, 4), (StepRange{3, 4}));
}

TEST(BuildFlexmax, TinyAStructure) {
  auto p = fixtures::tiny_a();
  auto m = build_flexmax(p);
  const auto& lp = m.lp;
  EXPECT_EQ(lp.sense(), Sense::maximize);
  EXPECT_EQ(count_prefix(lp, "x_", false), 8);
  EXPECT_EQ(count_prefix(lp, "z_", false), 8);
  EXPECT_EQ(count_prefix(lp, "cap_", true), 4);
  EXPECT_EQ(count_prefix(lp, "sustain_", true), 1);
  EXPECT_EQ(count_prefix(lp, "complete_", true), 2);
  EXPECT_EQ(lp.num_binaries(), 0u);
  ASSERT_EQ(m.sustained.size(), 1u);
  EXPECT_DOUBLE_EQ(lp.variables()[static_cast<std::size_t>(m.sustained[0])].objective, 1.0);
  EXPECT_DOUBLE_EQ(m.baseline_energy_kwh, (2.0 + 2.0) * 0.25);
}

TEST(BuildFlexmax, ZeroDelayHasExactlyDSteps) {
  auto p = fixtures::tiny_b();
  p.dq.enabled = false;
  auto m = build_flexmax(p);
  EXPECT_EQ(m.jobs[0].available, (StepRange{1, 2}));
  EXPECT_EQ(m.jobs[0].x.size(), 2u);
}

TEST(BuildFlexmax, PreemptionBudgetOnlyWithOverhead) {
  auto p = fixtures::tiny_a();
  EXPECT_EQ(count_prefix(build_flexmax(p).lp, "npbudget_", true), 2);
  p.spec.preempt_overhead_min = 0.0;
  EXPECT_EQ(count_prefix(build_flexmax(p).lp, "npbudget_", true), 0);
}

TEST(BuildFlexmax, DynamicQuotaVariables) {
  auto p = fixtures::tiny_b();
  auto m = build_flexmax(p);
  EXPECT_EQ(m.jobs[0].x_dq.size(), 2u);
  EXPECT_EQ(count_prefix(m.lp, "dqlim_", true), 2);
  int row = m.lp.constraint_index("complete_0");
  ASSERT_GE(row, 0);
  double dq_coef = 0;
  for (const auto& t : m.lp.constraints()[static_cast<std::size_t>(row)].terms) {
    if (t.var == m.jobs[0].x_dq[0]) dq_coef = t.coef;
  }
  EXPECT_DOUBLE_EQ(dq_coef, 0.5);
}

TEST(BuildFlexmax, InfeasibleIndexSetNamesJobs) {
  auto p = fixtures::tiny_a();
  p.jobs.jobs.push_back(job("late", 4, 2, 1));  // needs steps 4-5 in a 4-step horizon
  p.baseline.power_kw.assign(4, 0.0);
  try {
    build_flexmax(p);
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("late"), std::string::npos);
  }
}

TEST(BuildFlexmax, BadPlansAndBaselinesRejected) {
  auto p = fixtures::tiny_a();
  p.plan = ActivationPlan{{{1, 2}, {2, 3}}};
  EXPECT_THROW(build_flexmax(p), DomainError);
  p = fixtures::tiny_a();
  p.baseline.power_kw.pop_back();
  EXPECT_THROW(build_flexmax(p), DomainError);
}

TEST(BuildCostmin, TinyAStructureAndBound) {
  auto p = fixtures::tiny_a();
  EconParams econ;
  auto m = build_costmin(p, econ, {2.0, true, -1.0});
  EXPECT_EQ(m.lp.sense(), Sense::minimize);
  // Run flags exist from the nominal completion step onward: steps 3 and 4.
  EXPECT_EQ(m.lp.num_binaries(), 4u);
  EXPECT_EQ(m.jobs[0].run_flag_first, 3);
  EXPECT_DOUBLE_EQ(m.cost_lower_bound, 0.25);
  EXPECT_GE(m.lp.constraint_index("tighten"), 0);
  EXPECT_GE(m.lp.constraint_index("target"), 0);
  EXPECT_EQ(m.extra_energy_cost, -1);
  auto loose = build_costmin(p, econ, {2.0, false, -1.0});
  EXPECT_EQ(loose.lp.constraint_index("tighten"), -1);
  EXPECT_DOUBLE_EQ(loose.cost_lower_bound, 0.0);
}

TEST(BuildCostmin, NegativeTargetRejected) {
  EXPECT_THROW(build_costmin(fixtures::tiny_a(), {}, {-1.0, true, -1.0}), DomainError);
}

TEST(BuildCostmin, DynamicQuotaAddsEnergyCost) {
  auto p = fixtures::tiny_b();
  auto m = build_costmin(p, {}, {0.3, true, -1.0});
  EXPECT_GE(m.extra_energy_cost, 0);
  EXPECT_EQ(m.lp.constraint_index("tighten"), -1);  // S_a unknown
  auto t = build_costmin(p, {}, {0.3, true, 0.1});
  EXPECT_NEAR(t.cost_lower_bound, 0.5 * 0.25 * 1.0 * 0.2 / 1.5, 1e-15);
}

TEST(TighteningBound, ClosedForm) {
  EconParams econ{0.5, 2.0, 0.05};
  DataCenterSpec spec;
  spec.unit_power_kw = 0.4;
  ActivationPlan plan{{{1, 4}, {9, 12}, {20, 23}}};
  TimeGrid g;
  g.step_minutes = 30;
  // A * |T^A| * |N^A| * dt * R * S / G
  EXPECT_DOUBLE_EQ(tightening_bound(econ, spec, plan, g, 3.0), 0.5 * 4 * 3 * 0.5 * 2.0 * 3.0 / 0.4);
  DqParams dq{true, 0.5};
  EXPECT_DOUBLE_EQ(tightening_bound(econ, spec, plan, g, 3.0, dq, 1.0), 0.5 * 4 * 3 * 0.5 * 2.0 * 2.0 / (0.4 * 1.5));
  EXPECT_DOUBLE_EQ(tightening_bound(econ, spec, plan, g, 1.0, dq, 1.5), 0.0);
  EXPECT_DOUBLE_EQ(tightening_bound(econ, spec, {}, g, 1.0), 0.0);
}

TEST(LpExport, HighsReadsBackSameOptimum) {
  auto p = fixtures::tiny_a();
  auto m = build_costmin(p, {}, {2.0, false, -1.0});
  fixtures::TempDir dir;
  write_lp(m.lp, dir / "tiny.lp");
  auto text = fixtures::read_file(dir / "tiny.lp");
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find("Binaries"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);

  Highs h;
  h.setOptionValue("output_flag", false);
  ASSERT_EQ(h.readModel((dir / "tiny.lp").string()), HighsStatus::kOk);
  ASSERT_EQ(h.run(), HighsStatus::kOk);
  ASSERT_EQ(h.getModelStatus(), HighsModelStatus::kOptimal);
  EXPECT_NEAR(h.getInfo().objective_function_value, 0.25, 1e-6);

  auto direct = solve::HighsBackend().solve(m.lp, {});
  EXPECT_NEAR(direct.objective, h.getInfo().objective_function_value, 1e-6);
}

TEST(LpExport, TwoSidedRowsSplit) {
  LinearModel m;
  int a = m.add_variable("a", -kInf, kInf, 1.0);
  m.add_constraint("r", {{a, 1}}, -1, 2);
  std::ostringstream os;
  write_lp(m, os);
  EXPECT_NE(os.str().find("r_lo:"), std::string::npos);
  EXPECT_NE(os.str().find("r_hi:"), std::string::npos);
  EXPECT_NE(os.str().find("a free"), std::string::npos);
}
