#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sipp/rng.hpp"
#include "sipp/stats.hpp"

namespace {

using sipp::RngStream;

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(42, 3), b(42, 3);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, StreamsDiffer) {
  RngStream a(42, 0), b(42, 1);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a.next_u64() == b.next_u64();
  EXPECT_EQ(same, 0);
  RngStream c = a.substream(5), d = a.substream(5), e = a.substream(6);
  EXPECT_EQ(c.next_u64(), d.next_u64());
  EXPECT_NE(c.next_u64(), e.next_u64());
}

TEST(RngStream, UniformRangeAndKs) {
  RngStream rng(1);
  std::vector<double> xs(50000);
  for (auto& x : xs) {
    x = rng.uniform_open();
    ASSERT_GT(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
  auto ks = sipp::stats::ks_one_sample(xs, [](double x) { return x; });
  EXPECT_GT(ks.p_value, 1e-3);
}

TEST(RngStream, UniformIntIsUnbiased) {
  RngStream rng(2);
  std::vector<double> obs(7, 0.0), expected(7, 70000.0 / 7);
  for (int i = 0; i < 70000; ++i) obs[rng.uniform_int(7)] += 1;
  EXPECT_GT(sipp::stats::chi_square(obs, expected).p_value, 1e-3);
}

TEST(RngStream, PoissonMatchesLaw) {
  for (double mean : {0.3, 2.0, 13.8, 40.0}) {
    RngStream rng(11);
    std::vector<std::uint64_t> counts(20000);
    for (auto& c : counts) c = rng.poisson(mean);
    EXPECT_GT(sipp::stats::chi_square_poisson(counts, mean).p_value, 1e-3) << mean;
  }
}

TEST(RngStream, ExponentialMean) {
  RngStream rng(5);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = rng.exponential(2.0);
  auto ks = sipp::stats::ks_one_sample(xs, [](double x) { return 1.0 - std::exp(-2.0 * x); });
  EXPECT_GT(ks.p_value, 1e-3);
}

TEST(Stats, KolmogorovSurvivalKnownValues) {
  // Standard table: P(K > 1.358) = 0.05, P(K > 1.628) = 0.01.
  EXPECT_NEAR(sipp::stats::kolmogorov_survival(1.3581), 0.05, 5e-4);
  EXPECT_NEAR(sipp::stats::kolmogorov_survival(1.6276), 0.01, 1e-4);
  EXPECT_NEAR(sipp::stats::ks_one_sample_critical(0.05, 10000), 1.3581 / 100.0, 1e-5);
}

TEST(Stats, TwoSampleKsDetectsShift) {
  RngStream rng(9);
  std::vector<double> a(5000), b(5000);
  for (auto& x : a) x = rng.uniform();
  for (auto& x : b) x = rng.uniform() + 0.1;
  auto ks = sipp::stats::ks_two_sample(a, b);
  EXPECT_NEAR(ks.statistic, 0.1, 0.03);
  EXPECT_LT(ks.p_value, 1e-6);
}

TEST(Stats, WilsonInterval) {
  auto iv = sipp::stats::wilson_interval(0, 100, 1.96);
  EXPECT_DOUBLE_EQ(iv.lower, 0.0);
  EXPECT_NEAR(iv.upper, 0.0370, 1e-4);
  auto half = sipp::stats::wilson_interval(50, 100, 1.96);
  EXPECT_NEAR(half.lower + half.upper, 1.0, 1e-12);
}

TEST(Stats, MomentsOfSmallSample) {
  std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8};
  EXPECT_DOUBLE_EQ(sipp::stats::mean(x), 2.5);
  EXPECT_NEAR(sipp::stats::variance(x), 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(sipp::stats::covariance(x, y), 10.0 / 3.0, 1e-15);
}

}  // namespace
