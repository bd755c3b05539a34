#pragma once

// Subset-sum sets of point processes: A(theta) from the scale-invariant
// process, B(theta) from Poisson-Dirichlet coordinates, the hit probability
// f(theta) = P(1 in A(theta)) and Bernoulli convolutions sum J_i V_i.

#include <cstdint>
#include <span>
#include <vector>

#include "sipp/model.hpp"
#include "sipp/rng.hpp"
#include "sipp/stats.hpp"

namespace sipp {

enum class ReachMode { OuterApprox, InnerApprox };

inline constexpr std::uint64_t kMaxReachBits = 1ULL << 30;

// Bit j stands for the cell [j delta, (j+1) delta).
//
// OuterApprox: every subset sum s has bit floor(s/delta) set; every set bit j
//   has a subset sum in [j delta - slack, (j+1) delta + slack].
// InnerApprox: bit j is the sum of round(x_i/delta) over a subset; every subset
//   sum has a set bit with |s - j delta| <= slack and conversely. Inner bits
//   are always outer bits.
class ReachabilitySet {
 public:
  ReachabilitySet(double delta, std::uint64_t nbits, ReachMode mode);

  double delta() const noexcept { return delta_; }
  ReachMode mode() const noexcept { return mode_; }
  std::uint64_t size() const noexcept { return nbits_; }
  double slack() const noexcept { return slack_; }
  bool test(std::uint64_t j) const { return j < nbits_ && ((words_[j >> 6] >> (j & 63)) & 1U); }
  std::uint64_t count() const;
  std::vector<std::uint64_t> set_bits() const;

  // Adds one point: bits |= bits << shift (and << shift + 1 when `wide`).
  void add(std::uint64_t shift, bool wide);
  void set_slack(double s) { slack_ = s; }

  // Some set bit j with j delta - extra <= x < (j+1) delta + fatten + extra.
  bool covers(double x, double fatten = 0.0, double extra = 0.0) const;
  // Some set bit j with |j delta - x| <= slack.
  bool near(double x) const;

 private:
  double delta_;
  std::uint64_t nbits_;
  ReachMode mode_;
  double slack_ = 0.0;
  std::vector<std::uint64_t> words_;
};

// Subset sums of positive points up to s_max (default: the total).
ReachabilitySet reachable_sums(std::span<const double> points, double delta, ReachMode mode,
                               double s_max = -1.0);

// 99.9% quantile bound for the sum of the process below eps: eps times the
// Chernoff bound min_l (theta Ein(l) - log 0.001)/l, Ein(l) = sum l^k/(k k!).
double t_eps_bound(Theta theta, double eps);

// P(T >= 1) = 1 - e^{-gamma theta}/Gamma(theta + 1), an upper bound for f(theta).
double coverage_upper_reference(Theta theta);

struct FEstimate {
  double lower;
  double upper;
  stats::Interval lower_ci;  // 99% Wilson intervals
  stats::Interval upper_ci;
  double ci_halfwidth;       // largest half-width of the two intervals
  double t_eps_bound;
  std::uint64_t trials;
};

// Fraction of trials in which `target` is hit by the inner set (lower) and by
// the outer set fattened by the dust bound (upper), using process points in
// (eps, target]. Lower hits also require an upper hit.
FEstimate estimate_f(Theta theta, double eps, double delta, std::uint64_t trials, RngStream& rng,
                     double target = 1.0);

enum class BernoulliSource { PDConditional, SIPPUnit };

struct BernoulliSamples {
  std::vector<double> values;
  // PDConditional: largest |error| from replacing the unsampled tail by half
  // its mass. SIPPUnit: 99.9% bound on the omitted sum below the cutoff.
  double truncation_bound;
};

// PDConditional: sum J_i Y_i over coins_per_draw GEM spacings plus residual/2
// (same law as over ranked coordinates). SIPPUnit: sum J_i X_i over process
// points in (eps, 1) with eps = exp(-coins_per_draw / theta).
BernoulliSamples bernoulli_convolution_samples(Theta theta, BernoulliSource source,
                                               std::uint64_t draws, std::uint64_t coins_per_draw,
                                               RngStream& rng);

struct BSet {
  ReachabilitySet outer;
  std::vector<double> coordinates;  // top PD coordinates used
  double tail;                      // 1 - sum(coordinates)
  // x is within reach of the outer set fattened by the tail.
  bool covers(double x, double extra = 0.0) const { return outer.covers(x, tail, extra); }
};

BSet b_set_sample(Theta theta, int depth, RngStream& rng, double delta = 1.0 / 4096);

}  // namespace sipp
