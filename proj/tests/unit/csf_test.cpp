#include <gtest/gtest.h>

#include <sstream>

#include "dcflex/ingest/cloud_pricing.hpp"
#include "dcflex/scaling/csf.hpp"

using namespace dcflex;
using namespace dcflex::scaling;

namespace {

ingest::CloudOptionTable six() { return ingest::parse_cloud_pricing(DCFLEX_TEST_DATA_DIR "/pricing_six.csv"); }

const CsfSample* find(const CsfEstimate& e, const std::string& fast, const std::string& slow) {
  for (const auto& s : e.samples) {
    if (s.fast_model == fast && s.slow_model == slow) return &s;
  }
  return nullptr;
}

}  // namespace

TEST(Csf, SixOptionTable) {
  auto e = estimate_csf(six(), CostParams{});
  EXPECT_EQ(e.duplicates_removed, 1u);
  EXPECT_EQ(e.options.size(), 6u);
  ASSERT_EQ(e.samples.size(), 3u);
  EXPECT_EQ(e.dropped_too_slow, 1u);
  EXPECT_EQ(e.dropped_slower_and_pricier, 2u);

  // Hand values: V = price * count / speed, A = (V1 - V2) / (delta * V1),
  // csf = (A * R / G) / (0.5 * 1 / 1).
  const auto* a = find(e, "O1", "O2");
  ASSERT_NE(a, nullptr);
  EXPECT_NEAR(a->delay_frac, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(a->price_reduction_coeff, 1.2, 1e-12);
  EXPECT_NEAR(a->csf, 9.6, 1e-12);

  const auto* b = find(e, "O1", "O3");  // exactly twice as slow is kept
  ASSERT_NE(b, nullptr);
  EXPECT_NEAR(b->price_reduction_coeff, 0.2, 1e-12);
  EXPECT_NEAR(b->csf, 1.6, 1e-12);

  const auto* c = find(e, "O4", "O6");
  ASSERT_NE(c, nullptr);
  EXPECT_NEAR(c->delay_frac, 0.34, 1e-12);
  EXPECT_NEAR(c->price_reduction_coeff, 0.464 / 0.34, 1e-12);
  EXPECT_NEAR(c->csf, 10 * 0.464 / 0.34, 1e-11);
  EXPECT_EQ(find(e, "O4", "O5"), nullptr);
  EXPECT_EQ(find(e, "O2", "O3"), nullptr);
}

TEST(Csf, NominalParametersDivideOut) {
  auto base = estimate_csf(six(), CostParams{});
  auto other = estimate_csf(six(), CostParams{1.0, 2.0, 0.5, 0.05});
  ASSERT_EQ(base.samples.size(), other.samples.size());
  for (std::size_t i = 0; i < base.samples.size(); ++i) {
    EXPECT_NEAR(other.samples[i].csf, base.samples[i].csf * (0.5 * 1.0 / 1.0) / (1.0 * 2.0 / 0.5), 1e-12);
  }
}

TEST(Csf, ExcessivelySlowBoundary) {
  EXPECT_FALSE(excessively_slow(1.0));
  EXPECT_TRUE(excessively_slow(1.0 + 1e-12));
  EXPECT_FALSE(excessively_slow(0.0));
}

TEST(Csf, Errors) {
  EXPECT_THROW(estimate_csf({}, CostParams{}), DomainError);
  ingest::CloudOptionTable one;
  ingest::CloudOption o;
  o.provider = "p";
  o.model = "m";
  o.unit_price = 1;
  o.unit_power_w = 100;
  o.speed = 1;
  one.options = {o};
  EXPECT_THROW(estimate_csf(one, CostParams{}), DataError);
  auto equal = one;
  o.model = "n";
  equal.options.push_back(o);  // equal speeds: no pair
  EXPECT_THROW(estimate_csf(equal, CostParams{}), DataError);
}

TEST(Percentile, InclusiveInterpolation) {
  std::vector<double> v{9.6, 1.6, 10 * 0.464 / 0.34};
  EXPECT_DOUBLE_EQ(percentile(v, 50), 9.6);
  EXPECT_DOUBLE_EQ(percentile(v, 25), 5.6);
  EXPECT_DOUBLE_EQ(percentile(v, 0), 1.6);
  EXPECT_DOUBLE_EQ(percentile(v, 100), 10 * 0.464 / 0.34);
  EXPECT_DOUBLE_EQ(percentile(std::vector<double>{1, 2, 3, 4}, 75), 3.25);
  EXPECT_THROW(percentile(std::vector<double>{}, 50), DomainError);
  EXPECT_THROW(percentile(v, 101), DomainError);
}

TEST(Csf, SampleCsv) {
  auto e = estimate_csf(six(), CostParams{});
  std::ostringstream os;
  write_csf_samples(e.samples, os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "provider,device_type,fast_model,slow_model,A,csf");
  EXPECT_NE(os.str().find("\nP1,gpu,O1,O2,"), std::string::npos);
}
