#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "sipp/model.hpp"

namespace {

using sipp::AtInfinity;
using sipp::AtZero;
using sipp::PointConfiguration;
using sipp::Theta;
using sipp::Window;

TEST(Theta, RejectsNonpositiveAndNonFinite) {
  EXPECT_THROW(Theta(0.0), std::invalid_argument);
  EXPECT_THROW(Theta(-1.0), std::invalid_argument);
  EXPECT_THROW(Theta(std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_THROW(Theta(std::nan("")), std::invalid_argument);
  EXPECT_DOUBLE_EQ(Theta(0.5).value(), 0.5);
}

TEST(Rank, SortsDescending) {
  std::vector<double> v{0.2, 0.5, 0.3};
  EXPECT_EQ(sipp::rank(v), (std::vector<double>{0.5, 0.3, 0.2}));
  EXPECT_TRUE(sipp::rank(std::vector<double>{}).empty());
}

TEST(Rank, RejectsBadEntries) {
  EXPECT_THROW(sipp::rank(std::vector<double>{0.2, 0.0}), std::invalid_argument);
  EXPECT_THROW(sipp::rank(std::vector<double>{-0.1}), std::invalid_argument);
  EXPECT_THROW(sipp::rank(std::vector<double>{std::nan("")}), std::invalid_argument);
}

TEST(Rank, IdempotentAndPermutationInvariant) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(1 + trial % 9);
    for (auto& x : v) x = u(gen);
    auto r = sipp::rank(v);
    EXPECT_EQ(sipp::rank(r), r);
    std::shuffle(v.begin(), v.end(), gen);
    EXPECT_EQ(sipp::rank(v), r);
  }
}

TEST(PointConfiguration, EnforcesLabellingInvariants) {
  Theta th(1.0);
  EXPECT_NO_THROW(PointConfiguration({0.5, 0.25}, AtZero{}, 0.1, th));
  EXPECT_THROW(PointConfiguration({0.25, 0.5}, AtZero{}, 0.1, th), std::invalid_argument);
  EXPECT_THROW(PointConfiguration({0.5, 0.05}, AtZero{}, 0.1, th), std::invalid_argument);
  EXPECT_THROW(PointConfiguration({0.5, 0.5}, AtZero{}, 0.1, th), std::invalid_argument);
  EXPECT_THROW(PointConfiguration({2.0, 1.0}, Window{2.0, 1.0}, 2.0, th), std::invalid_argument);
  EXPECT_THROW(PointConfiguration({3.0}, Window{1.0, 2.0}, 1.0, th), std::invalid_argument);
  EXPECT_NO_THROW(PointConfiguration({0.2, 0.7}, AtInfinity{1.0}, 0.1, th));
  EXPECT_THROW(PointConfiguration({0.7, 0.2}, AtInfinity{1.0}, 0.1, th), std::invalid_argument);
}

TEST(Relabel, AtZeroToWindowKeepsPoints) {
  PointConfiguration c({0.5, 0.25}, AtZero{}, 0.1, Theta(1.0));
  auto w = sipp::relabel(c, Window{0.1, 1.0});
  EXPECT_EQ(w.points(), (std::vector<double>{0.5, 0.25}));
  EXPECT_EQ(sipp::labelling_name(w.labelling()), "window");
  auto back = sipp::relabel(w, AtZero{});
  EXPECT_EQ(back.points(), c.points());
}

TEST(Relabel, AtInfinityReversesOrder) {
  PointConfiguration c({0.5, 0.25}, AtZero{}, 0.1, Theta(1.0));
  auto inf = sipp::relabel(c, AtInfinity{1.0});
  EXPECT_EQ(inf.points(), (std::vector<double>{0.25, 0.5}));
  EXPECT_EQ(sipp::relabel(inf, AtZero{}).points(), c.points());
  auto w = sipp::relabel(inf, Window{0.1, 1.0});
  EXPECT_EQ(w.points(), c.points());
}

TEST(Relabel, RejectsConversionsOutsideWindow) {
  PointConfiguration c({0.5, 0.25}, AtZero{}, 0.1, Theta(1.0));
  EXPECT_THROW(sipp::relabel(c, Window{0.05, 1.0}), std::invalid_argument);
  EXPECT_THROW(sipp::relabel(c, AtInfinity{2.0}), std::invalid_argument);
  PointConfiguration w({1.5, 1.2}, Window{1.0, 2.0}, 1.0, Theta(1.0));
  EXPECT_THROW(sipp::relabel(w, AtZero{}), std::invalid_argument);
}

TEST(LogCoordinates, RoundTrip) {
  PointConfiguration c({0.9, 0.5, 0.123, 1e-5}, AtZero{}, 1e-6, Theta(2.0));
  auto logs = sipp::log_coordinates(c);
  EXPECT_TRUE(std::is_sorted(logs.begin(), logs.end()));
  auto back = sipp::from_log_coordinates(logs, 1e-6, Theta(2.0));
  ASSERT_EQ(back.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_NEAR(back.points()[i], c.points()[i], 1e-14);
  }
}

TEST(SpacingVector, RejectsEntriesOutsideUnitInterval) {
  EXPECT_NO_THROW(sipp::SpacingVector({0.5, 0.25}, 0.25, Theta(1.0)));
  EXPECT_THROW(sipp::SpacingVector({1.0}, 0.0, Theta(1.0)), std::invalid_argument);
  EXPECT_THROW(sipp::SpacingVector({0.7, 0.6}, 0.0, Theta(1.0)), std::invalid_argument);
}

TEST(RankedSimplex, ChecksOrderAndMass) {
  EXPECT_NO_THROW(sipp::RankedSimplex({0.5, 0.3}, 0.2));
  EXPECT_THROW(sipp::RankedSimplex({0.3, 0.5}, 0.2), std::invalid_argument);
  EXPECT_THROW(sipp::RankedSimplex({0.5, 0.3}, 0.3), std::invalid_argument);
}

TEST(DiscreteMeasure, ChecksMassAndSupport) {
  EXPECT_NO_THROW(sipp::DiscreteMeasure({0.0, 1.0}, {0.5, 0.5}));
  EXPECT_THROW(sipp::DiscreteMeasure({1.0, 0.0}, {0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(sipp::DiscreteMeasure({0.0, 1.0}, {0.5, 0.6}), std::invalid_argument);
  auto m = sipp::DiscreteMeasure::from_atoms({1.0, 0.0, 1.0}, {0.25, 0.5, 0.25});
  EXPECT_EQ(m.support(), (std::vector<double>{0.0, 1.0}));
  EXPECT_NEAR(m.masses()[1], 0.5, 1e-15);
}

}  // namespace
