#include <gtest/gtest.h>

#include <cmath>

#include "sipp/checks.hpp"

namespace {

void expect_all_pass(const std::vector<sipp::CheckRow>& rows) {
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) {
    EXPECT_TRUE(r.pass) << r.suite << ": " << r.name << " value=" << r.value
                        << " reference=" << r.reference << " tolerance=" << r.tolerance;
  }
}

TEST(CheckSuites, Golden) { expect_all_pass(sipp::golden_suite()); }

TEST(CheckSuites, Oracle) { expect_all_pass(sipp::oracle_suite(6)); }

TEST(CheckSuites, StatisticalPinnedSeed) { expect_all_pass(sipp::statistical_suite(42)); }

TEST(Experiments, NamesAndDispatch) {
  auto names = sipp::experiment_names();
  EXPECT_EQ(names.size(), 6u);
  EXPECT_THROW(sipp::run_experiment("nope", 1), std::invalid_argument);
}

TEST(Experiments, TrendRowsPass) {
  for (const char* name : {"prefix-tv", "superexponential"}) {
    for (const auto& r : sipp::run_experiment(name, 42)) {
      EXPECT_TRUE(r.pass) << name << " " << r.parameter << " " << r.statistic;
      if (!std::isnan(r.tolerance)) EXPECT_TRUE(std::isfinite(r.value));
    }
  }
}

TEST(Helpers, TwoCoordinateCdf) {
  // With b = a the second constraint is implied: P(V1 <= 1/2) = rho(2).
  EXPECT_NEAR(sipp::checks::pd1_two_coordinate_cdf(0.5, 0.5), 1.0 - std::log(2.0), 1e-10);
  EXPECT_NEAR(sipp::checks::pd1_two_coordinate_cdf(0.5, 0.25), 0.0963990, 1e-6);
  EXPECT_THROW(sipp::checks::pd1_two_coordinate_cdf(0.25, 0.5), std::invalid_argument);
}

}  // namespace
