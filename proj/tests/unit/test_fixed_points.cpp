#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sipp/fixed_points.hpp"
#include "sipp/rng.hpp"

namespace {

using sipp::DisplacementPermutation;
using sipp::IndexedSequence;
using sipp::NonnegIntMatrix;

const double kGolden = 0.5 * (1.0 + std::sqrt(5.0));

TEST(GeometricBase, KnownRoots) {
  EXPECT_EQ(sipp::geometric_base(0), 2.0);
  EXPECT_NEAR(sipp::geometric_base(1), kGolden, 1e-12);
  const double b = sipp::geometric_base(5);
  EXPECT_LE(std::abs(std::pow(b, 6) - std::pow(b, 5) - 1.0), 1e-13);
  EXPECT_THROW(sipp::geometric_base(-1), std::invalid_argument);
}

TEST(GeometricBase, DecreasesTowardOne) {
  double prev = 2.0;
  for (int k = 1; k <= 20; ++k) {
    double b = sipp::geometric_base(k);
    EXPECT_LT(b, prev);
    EXPECT_GT(b, 1.0);
    prev = b;
  }
}

TEST(PeriodicBase, KnownRoots) {
  EXPECT_NEAR(sipp::periodic_base(2, 1).value(), (3.0 + std::sqrt(5.0)) / 2.0, 1e-10);
  EXPECT_NEAR(sipp::periodic_base(2, -1).value(), 1.75487, 1e-5);
  EXPECT_NEAR(sipp::periodic_base(1, 0).value(), 2.0, 1e-14);
  EXPECT_FALSE(sipp::periodic_base(2, 2).has_value());
}

TEST(PeriodicBase, RootSolvesEquation) {
  for (int m = 1; m <= 4; ++m) {
    for (int k = -2; k <= 3; ++k) {
      auto b = sipp::periodic_base(m, k);
      if (!b) continue;
      EXPECT_GT(*b, 1.0);
      EXPECT_NEAR(m * std::log(*b - 1.0), k * std::log(*b), 1e-10) << m << " " << k;
    }
  }
}

TEST(SpacingTransform, GeometricIsFixed) {
  std::vector<double> x;
  for (int i = 0; i <= 10; ++i) x.push_back(std::ldexp(1.0, i));
  auto s = sipp::spacing_transform(x);
  ASSERT_EQ(s.size(), 10u);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(s[i], std::ldexp(1.0, i));
}

TEST(SpacingTransform, GoldenShiftsByOne) {
  std::vector<double> x;
  for (int i = 0; i <= 10; ++i) x.push_back(std::pow(kGolden, i));
  auto s = sipp::spacing_transform(x);
  ASSERT_EQ(s.size(), 10u);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(s[i] / std::pow(kGolden, i - 1), 1.0, 1e-13);
}

TEST(SpacingTransform, PeriodTwoOrbit) {
  // x = (0, 1, 3): spacings (1, 2) sorted; their partial sums (0, 1, 3) come back.
  std::vector<double> x{0.0, 1.0, 3.0};
  auto s = sipp::spacing_transform(x);
  EXPECT_EQ(s, (std::vector<double>{1.0, 2.0}));
  EXPECT_THROW(sipp::spacing_transform(std::vector<double>{1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(sipp::spacing_transform(std::vector<double>{2.0, 1.0}), std::invalid_argument);
}

TEST(Displacement, PeriodicAndTable) {
  auto p = DisplacementPermutation::periodic({1, 0});
  EXPECT_EQ(p.d(0), 1);
  EXPECT_EQ(p.d(1), 0);
  EXPECT_EQ(p.d(-1), 0);
  EXPECT_EQ(p.d(-2), 1);
  EXPECT_EQ(p.bound(), 1);
  EXPECT_FALSE(p.injective_on(0, 4));
  auto one = DisplacementPermutation::periodic({1});
  EXPECT_TRUE(one.injective_on(-20, 20));
  auto t = DisplacementPermutation::table(-2, {3, 2}, 1);
  EXPECT_EQ(t.d(-2), 3);
  EXPECT_EQ(t.d(-1), 2);
  EXPECT_EQ(t.d(5), 1);
  EXPECT_THROW(DisplacementPermutation::periodic({-1}), std::invalid_argument);
  EXPECT_THROW(DisplacementPermutation::periodic({63}), std::invalid_argument);
}

TEST(ExtendForward, GoldenEntranceContinues) {
  IndexedSequence prefix{-1, {1.0 / kGolden, 1.0}};
  auto perm = DisplacementPermutation::periodic({1});
  auto out = sipp::extend_forward(prefix, perm, 10);
  EXPECT_EQ(out.last_index(), 10);
  for (std::int64_t i = -1; i <= 10; ++i) {
    EXPECT_NEAR(out.at(i) / std::pow(kGolden, static_cast<double>(i)), 1.0, 1e-12) << i;
  }
}

TEST(ExtendForward, ZeroDisplacementDoubles) {
  IndexedSequence prefix{0, {1.0}};
  auto out = sipp::extend_forward(prefix, DisplacementPermutation::periodic({0}), 10);
  for (int i = 0; i <= 10; ++i) EXPECT_EQ(out.at(i), std::ldexp(1.0, i));
}

TEST(ExtendForward, StructuralErrors) {
  IndexedSequence prefix{0, {1.0}};
  // d = 1 needs x_{-1}, which the prefix lacks.
  EXPECT_THROW(sipp::extend_forward(prefix, DisplacementPermutation::periodic({1}), 3),
               sipp::ExtensionError);
  // Reuse of an index already consumed as a spacing.
  IndexedSequence two{-1, {0.5, 1.0}};
  EXPECT_THROW(sipp::extend_forward(two, DisplacementPermutation::periodic({1}), 2, {-1}),
               sipp::ExtensionError);
}

TEST(ExtendForward, AlternatingPatternNeedsReuse) {
  auto perm = DisplacementPermutation::periodic({1, 0});
  auto ent = sipp::entrance_solution(perm, 1e-12);
  ASSERT_TRUE(ent.converged);
  auto prefix = sipp::entrance_window(ent.state);
  EXPECT_THROW(sipp::extend_forward(prefix, perm, 20), sipp::ExtensionError);
  auto out = sipp::extend_forward(prefix, perm, 20, {}, false);
  for (std::int64_t i = 0; i < 20; ++i) {
    double lhs = out.at(i + 1);
    double rhs = out.at(i) + out.at(perm.pi(i));
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * lhs) << i;
  }
}

TEST(EntranceSolution, ConstantOneGivesGoldenRatio) {
  auto ent = sipp::entrance_solution(DisplacementPermutation::periodic({1}), 1e-10);
  ASSERT_TRUE(ent.converged) << ent.diagnostic;
  EXPECT_NEAR(ent.state.ratios.at(0), 1.0 / kGolden, 1e-10);
  EXPECT_LE(ent.certificate, 1e-10);
  EXPECT_NEAR(ent.forward_ratio, kGolden, 1e-9);
}

TEST(EntranceSolution, MatchesGeometricBases) {
  for (int k = 0; k <= 4; ++k) {
    auto ent = sipp::entrance_solution(DisplacementPermutation::periodic({k}), 1e-11);
    ASSERT_TRUE(ent.converged) << k;
    const double b = sipp::geometric_base(k);
    for (double r : ent.state.ratios) EXPECT_NEAR(r, 1.0 / b, 1e-9) << k;
  }
}

TEST(EntranceSolution, IndependentOfSeed) {
  auto perm = DisplacementPermutation::periodic({2, 0, 1});
  const std::size_t dim = static_cast<std::size_t>(perm.bound()) + 1;
  std::vector<double> s1(dim, 1.0), s2(dim);
  sipp::RngStream rng(3);
  for (auto& v : s2) v = 0.1 + rng.uniform();
  auto a = sipp::entrance_solution(perm, 1e-12, 100000, s1);
  auto b = sipp::entrance_solution(perm, 1e-12, 100000, s2);
  ASSERT_TRUE(a.converged);
  ASSERT_TRUE(b.converged);
  ASSERT_EQ(a.state.ratios.size(), b.state.ratios.size());
  for (std::size_t i = 0; i < a.state.ratios.size(); ++i) {
    EXPECT_NEAR(a.state.ratios[i], b.state.ratios[i], 1e-11);
  }
}

TEST(EntranceSolution, RatiosInRangeAndConsistentWithExtension) {
  auto perm = DisplacementPermutation::periodic({2, 0});
  auto ent = sipp::entrance_solution(perm, 1e-12);
  ASSERT_TRUE(ent.converged);
  for (double r : ent.state.ratios) {
    EXPECT_GE(r, 0.5);
    EXPECT_LT(r, 1.0);
  }
  auto ext = sipp::extend_forward(sipp::entrance_window(ent.state), perm, 1, {}, false);
  EXPECT_NEAR(ext.at(1), ent.forward_ratio, 1e-10);
}

TEST(EntranceSolution, ReportsNonConvergence) {
  auto ent = sipp::entrance_solution(DisplacementPermutation::periodic({3}), 1e-15, 3);
  EXPECT_FALSE(ent.converged);
  EXPECT_FALSE(ent.diagnostic.empty());
}

TEST(HilbertDistance, Examples) {
  std::vector<double> u{1.0, 2.0, 3.0};
  std::vector<double> v{2.0, 4.0, 6.0};
  EXPECT_DOUBLE_EQ(sipp::hilbert_distance(u, u), 0.0);
  EXPECT_NEAR(sipp::hilbert_distance(u, v), 0.0, 1e-15);
  std::vector<double> a{1.0, 1.0}, b{1.0, 2.0};
  EXPECT_NEAR(sipp::hilbert_distance(a, b), std::log(2.0), 1e-15);
  std::vector<double> bad{1.0, 0.0};
  EXPECT_THROW(sipp::hilbert_distance(a, bad), std::invalid_argument);
}

TEST(Matrices, StepIsCompanionPlusUnit) {
  for (std::size_t d = 0; d < 4; ++d) {
    EXPECT_EQ(NonnegIntMatrix::step(4, d), NonnegIntMatrix::companion(4) + NonnegIntMatrix::unit(4, 0, d));
  }
  EXPECT_EQ(NonnegIntMatrix::companion(4),
            NonnegIntMatrix::below_diagonal(4) + NonnegIntMatrix::unit(4, 0, 0));
}

TEST(Matrices, CompanionPowers) {
  const std::size_t n = 5;
  auto c = NonnegIntMatrix::companion(n);
  for (unsigned k = 0; k < n; ++k) {
    auto p = c.power(k);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(p(i, 0), i <= k ? 1u : 0u) << k;
      for (std::size_t j = 1; j < n; ++j) EXPECT_EQ(p(i, j), i == j + k ? 1u : 0u) << k;
    }
  }
  EXPECT_EQ(NonnegIntMatrix::below_diagonal(n).power(n), NonnegIntMatrix(n));
}

TEST(Matrices, OverflowIsDetected) {
  auto a = NonnegIntMatrix::step(2, 1);
  EXPECT_NO_THROW(a.power(60));
  EXPECT_THROW(a.power(200), std::overflow_error);
}

TEST(Matrices, ContractionBound) {
  sipp::RngStream rng(5);
  for (int k : {1, 2, 3}) {
    const std::size_t n = static_cast<std::size_t>(k) + 1;
    const double r = k * std::log(2.0);
    const double bound = sipp::contraction_bound(k, r);
    EXPECT_LT(bound, r);
    for (int trial = 0; trial < 100; ++trial) {
      NonnegIntMatrix m = NonnegIntMatrix::step(n, rng.uniform_int(n));
      for (int f = 1; f < 2 * k; ++f) m = NonnegIntMatrix::step(n, rng.uniform_int(n)) * m;
      std::vector<double> u(n), v(n);
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = 1.0 + rng.uniform();
        v[i] = u[i] * std::exp(r * rng.uniform());
      }
      ASSERT_LE(sipp::hilbert_distance(u, v), r + 1e-12);
      EXPECT_LE(sipp::hilbert_distance(m.apply(u), m.apply(v)), bound + 1e-12) << k;
    }
  }
}

}  // namespace
