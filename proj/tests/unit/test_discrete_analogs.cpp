#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <vector>

#include "sipp/discrete_analogs.hpp"
#include "sipp/samplers.hpp"
#include "sipp/special_functions.hpp"
#include "sipp/stats.hpp"
#include "sipp/tv_distance.hpp"

namespace {

using sipp::RngStream;
using sipp::Theta;

TEST(EwensCycles, SizeIdentity) {
  RngStream rng(1);
  for (double th : {0.5, 1.0, 3.0}) {
    for (std::uint64_t n : {1u, 2u, 7u, 100u}) {
      auto c = sipp::ewens_cycle_counts(Theta(th), n, rng);
      ASSERT_EQ(c.counts.size(), n);
      std::uint64_t total = 0;
      for (std::uint64_t i = 1; i <= n; ++i) total += i * c.counts[i - 1];
      EXPECT_EQ(total, n);
    }
  }
  auto one = sipp::ewens_cycle_counts(Theta(2.0), 1, rng);
  EXPECT_EQ(one.counts[0], 1u);
  EXPECT_EQ(one.longest(), 1u);
}

TEST(EwensCycles, FixedPointFrequencyNThree) {
  // Uniform permutation of [3]: P(C_3 = 1) = 2/6.
  RngStream rng(2);
  const int draws = 400000;
  int hits = 0;
  for (int i = 0; i < draws; ++i) hits += sipp::ewens_cycle_counts(Theta(1), 3, rng).counts[2] == 1;
  const double p = 1.0 / 3.0;
  EXPECT_NEAR(hits / double(draws), p, 3.0 * std::sqrt(p * (1 - p) / draws));
}

TEST(EwensCycles, MatchesCauchyLaw) {
  RngStream rng(3);
  const int n = 5, draws = 100000;
  auto law = sipp::cauchy_cycle_law(n);
  std::map<std::vector<int>, double> counts;
  for (int i = 0; i < draws; ++i) {
    auto c = sipp::ewens_cycle_counts(Theta(1), n, rng);
    counts[std::vector<int>(c.counts.begin(), c.counts.end())] += 1;
  }
  std::vector<double> obs, exp;
  for (const auto& [type, p] : law) {
    obs.push_back(counts[type]);
    exp.push_back(p * draws);
  }
  EXPECT_GT(sipp::stats::chi_square(obs, exp).p_value, 1e-3);
}

TEST(CycleLaw, ExactConditioning) {
  for (int n = 1; n <= 6; ++n) {
    auto r = sipp::exact_cycle_law_check(n);
    EXPECT_LT(r.max_error_conditioned, 1e-12) << n;
    EXPECT_LT(r.max_error_shepp_lloyd, 1e-12) << n;
    EXPECT_LT(r.max_error_z_pair, 1e-12) << n;
    double total = 0.0;
    for (const auto& [type, p] : r.enumerated) total += p;
    EXPECT_NEAR(total, 1.0, 1e-14);
  }
  EXPECT_THROW(sipp::exact_cycle_law_check(sipp::kMaxCycleLawN + 1), std::invalid_argument);
  EXPECT_THROW(sipp::exact_cycle_law_check(0), std::invalid_argument);
}

TEST(CycleLaw, CauchyFormulaForFour) {
  // Cycle types of S_4: 1^4, 1^2 2, 2^2, 1 3, 4 with counts 1, 6, 3, 8, 6.
  auto law = sipp::cauchy_cycle_law(4);
  EXPECT_NEAR((law[{4, 0, 0, 0}]), 1.0 / 24, 1e-15);
  EXPECT_NEAR((law[{2, 1, 0, 0}]), 6.0 / 24, 1e-15);
  EXPECT_NEAR((law[{0, 2, 0, 0}]), 3.0 / 24, 1e-15);
  EXPECT_NEAR((law[{1, 0, 1, 0}]), 8.0 / 24, 1e-15);
  EXPECT_NEAR((law[{0, 0, 0, 1}]), 6.0 / 24, 1e-15);
}

TEST(PrefixTV, FullObservationForFour) {
  // 1 - sum over cycle types c of min(P_C(c), P_Z(c)), with P_Z(c) a product
  // of Poisson(1/i) masses; every other Z vector has P_C = 0.
  auto law = sipp::cauchy_cycle_law(4);
  double overlap = 0.0;
  for (const auto& [c, pc] : law) {
    double pz = 1.0;
    for (int i = 1; i <= 4; ++i) {
      double lambda = 1.0 / i;
      pz *= std::exp(-lambda) * std::pow(lambda, c[i - 1]) / std::tgamma(c[i - 1] + 1.0);
    }
    overlap += std::min(pc, pz);
  }
  auto r = sipp::exact_prefix_tv(4, 4);
  EXPECT_NEAR(r.value, 1.0 - overlap, 1e-13);
  EXPECT_EQ(r.method, sipp::TVMethod::ExactEnumeration);
}

TEST(PrefixTV, EmptyObservation) {
  EXPECT_DOUBLE_EQ(sipp::exact_prefix_tv(10, 0).value, 0.0);
  EXPECT_DOUBLE_EQ(sipp::exact_prefix_tv_grouped(10, 0), 0.0);
}

TEST(PrefixTV, RoutesAgree) {
  for (auto [n, b] : std::vector<std::pair<int, int>>{{6, 6}, {10, 3}, {20, 10}, {30, 15}}) {
    auto r = sipp::exact_prefix_tv(n, b);
    EXPECT_NEAR(r.value, sipp::exact_prefix_tv_grouped(n, b), 1e-12) << n << " " << b;
    EXPECT_LE(r.error_bound, 1e-12);
  }
  EXPECT_NEAR(sipp::exact_prefix_tv(20, 10).value, 0.45204626744799631, 1e-12);
}

TEST(PrefixTV, ApproachesLimit) {
  const double h = sipp::h1_explicit(0.5).value;
  double prev = INFINITY;
  for (int n : {20, 40, 60}) {
    double gap = std::abs(sipp::exact_prefix_tv_grouped(n, n / 2) - h);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 0.05);
}

TEST(PrefixTV, EnumerationGuard) {
  EXPECT_THROW(sipp::exact_prefix_tv(200, 100), std::length_error);
}

TEST(Factorize, Examples) {
  EXPECT_EQ(sipp::factorize(12), (std::vector<std::uint64_t>{3, 2, 2}));
  EXPECT_TRUE(sipp::factorize(1).empty());
  EXPECT_EQ(sipp::factorize(999999937), (std::vector<std::uint64_t>{999999937}));
  std::vector<std::uint64_t> billion(9, 5);
  billion.insert(billion.end(), 9, 2);
  EXPECT_EQ(sipp::factorize(1000000000), billion);
}

TEST(Factorize, ProductsAndPrimality) {
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    auto f = sipp::factorize(n);
    std::uint64_t prod = 1;
    for (auto p : f) {
      prod *= p;
      EXPECT_EQ(sipp::factorize(p).size(), 1u);
    }
    EXPECT_EQ(prod, n);
    EXPECT_TRUE(std::is_sorted(f.rbegin(), f.rend()));
  }
}

TEST(FactorUniformInteger, PaddingConvention) {
  RngStream rng(4);
  auto f = sipp::factor_uniform_integer(1, rng);
  EXPECT_EQ(f.value, 1u);
  EXPECT_TRUE(f.primes.empty());
  EXPECT_EQ(f.p(1), 1u);
  EXPECT_EQ(f.p(3), 1u);
  for (int i = 0; i < 100; ++i) {
    auto g = sipp::factor_uniform_integer(1000, rng);
    EXPECT_GE(g.value, 1u);
    EXPECT_LE(g.value, 1000u);
    EXPECT_EQ(g.p(g.primes.size() + 1), 1u);
  }
  EXPECT_THROW(sipp::factor_uniform_integer(sipp::kMaxFactorCeiling + 1, rng), std::invalid_argument);
}

TEST(SmoothRough, Boundaries) {
  EXPECT_EQ(sipp::smooth_rough_counts(100, 100).psi, 100u);
  EXPECT_EQ(sipp::smooth_rough_counts(100, 1).phi, 100u);
  EXPECT_EQ(sipp::smooth_rough_counts(100, 1).psi, 1u);
  // 1 and the primes above 10 up to 100 (21 of them).
  EXPECT_EQ(sipp::smooth_rough_counts(100, 10).phi, 22u);
}

TEST(SmoothRough, AgreesWithFactorization) {
  const std::uint64_t x = 30000;
  for (std::uint64_t y : {2u, 7u, 31u, 173u, 1000u}) {
    std::uint64_t psi = 0, phi = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
      auto f = sipp::factorize(n);
      if (f.empty() || f.front() <= y) ++psi;
      if (f.empty() || f.back() > y) ++phi;
    }
    auto c = sipp::smooth_rough_counts(x, y);
    EXPECT_EQ(c.psi, psi) << y;
    EXPECT_EQ(c.phi, phi) << y;
  }
}

TEST(RandomMapping, ComponentsPartitionN) {
  RngStream rng(5);
  auto one = sipp::random_mapping_components(1, rng);
  EXPECT_EQ(one, (std::vector<std::uint64_t>{1}));
  for (std::uint64_t n : {2u, 10u, 1000u, 100000u}) {
    auto c = sipp::random_mapping_components(n, rng);
    EXPECT_EQ(std::accumulate(c.begin(), c.end(), std::uint64_t{0}), n);
    EXPECT_TRUE(std::is_sorted(c.rbegin(), c.rend()));
  }
}

TEST(RandomMapping, TwoPointLaw) {
  // Of the four maps on [2] only the identity has two components.
  RngStream rng(6);
  const int draws = 40000;
  int two = 0;
  for (int i = 0; i < draws; ++i) two += sipp::random_mapping_components(2, rng).size() == 2;
  EXPECT_NEAR(two / double(draws), 0.25, 3.0 * std::sqrt(0.25 * 0.75 / draws));
}

TEST(DivisorMeasure, Examples) {
  auto one = sipp::divisor_measure(1);
  EXPECT_EQ(one.support(), (std::vector<double>{1.0}));
  auto six = sipp::divisor_measure(6);
  ASSERT_EQ(six.size(), 4u);
  EXPECT_DOUBLE_EQ(six.support()[0], 0.0);
  EXPECT_NEAR(six.support()[1], std::log(2.0) / std::log(6.0), 1e-15);
  EXPECT_NEAR(six.support()[2], std::log(3.0) / std::log(6.0), 1e-15);
  EXPECT_DOUBLE_EQ(six.support()[3], 1.0);
  for (double m : six.masses()) EXPECT_DOUBLE_EQ(m, 0.25);
  auto p = sipp::divisor_measure(101);
  EXPECT_EQ(p.support(), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(p.masses(), (std::vector<double>{0.5, 0.5}));
  EXPECT_THROW(sipp::divisor_measure(0), std::invalid_argument);
}

TEST(LevyDistance, PointMasses) {
  sipp::DiscreteMeasure d0({0.0}, {1.0});
  EXPECT_DOUBLE_EQ(sipp::levy_distance(d0, d0), 0.0);
  for (double eps : {0.1, 0.3, 0.75, 1.0}) {
    sipp::DiscreteMeasure de({eps}, {1.0});
    EXPECT_NEAR(sipp::levy_distance(d0, de), eps, 1e-12) << eps;
  }
  // Beyond 1 the vertical unit band takes over.
  sipp::DiscreteMeasure d3({3.0}, {1.0});
  EXPECT_NEAR(sipp::levy_distance(d0, d3), 1.0, 1e-12);
}

TEST(LevyDistance, MetricAxioms) {
  RngStream rng(7);
  auto random_measure = [&] {
    std::vector<double> loc, w;
    for (int i = 0; i < 5; ++i) {
      loc.push_back(rng.uniform());
      w.push_back(0.1 + rng.uniform());
    }
    double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= s;
    return sipp::DiscreteMeasure::from_atoms(loc, w);
  };
  for (int t = 0; t < 50; ++t) {
    auto a = random_measure(), b = random_measure(), c = random_measure();
    double ab = sipp::levy_distance(a, b), ba = sipp::levy_distance(b, a);
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_LE(ab, sipp::levy_distance(a, c) + sipp::levy_distance(c, b) + 1e-12);
    EXPECT_NEAR(sipp::levy_distance(a, a), 0.0, 1e-12);
  }
}

TEST(DivisorLogRatios, RangeAndMean) {
  RngStream rng(8);
  auto r = sipp::divisor_log_ratios(1000000, 20000, rng);
  for (double x : r) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 1.0);
  }
  // d and N/d are equally likely, so the law is symmetric about 1/2 (N = 1 aside).
  EXPECT_NEAR(sipp::stats::mean(r), 0.5, 4.0 * std::sqrt(0.125 / r.size()) + 1e-5);
}

TEST(BernoulliSubsetMeasure, MassAndSymmetry) {
  RngStream rng(9);
  auto m = sipp::bernoulli_subset_measure(Theta(1), 6, rng);
  double total = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    total += m.masses()[i];
    mean += m.masses()[i] * m.support()[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(mean, 0.5, 1e-12);
  EXPECT_LE(m.size(), 64u);
}

TEST(ArcsineReference, Quantiles) {
  auto a = sipp::arcsine_reference(4);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(a.masses()[i], 0.25, 1e-15);
    double q = std::pow(std::sin(std::numbers::pi / 2 * (i + 0.5) / 4), 2);
    EXPECT_NEAR(a.support()[i], q, 1e-15);
  }
}

TEST(LargestPrime, SqrtFractionNearRhoTwo) {
  RngStream rng(10);
  double f = sipp::largest_prime_sqrt_fraction(1000000000ULL, 20000, rng);
  EXPECT_NEAR(f, 1.0 - std::log(2.0), 0.05);
}

}  // namespace
