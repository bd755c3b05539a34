#pragma once

// Seeded samplers for the scale-invariant Poisson process and its relatives.

#include <cstdint>
#include <span>
#include <vector>

#include "sipp/model.hpp"
#include "sipp/rng.hpp"

namespace sipp {

// Points X_k = U_1...U_k (U_i = Uniform^{1/theta}) above eps, AtZero.
PointConfiguration sample_sipp_unit(Theta theta, double eps, RngStream& rng);

// Poisson(theta log(b/a)) points with log-uniform positions, Window(a, b).
PointConfiguration sample_sipp_window(Theta theta, double a, double b, RngStream& rng);

// First n GEM spacings.
SpacingVector sample_gem(Theta theta, std::size_t n, RngStream& rng);

struct PdSample {
  RankedSimplex ranked;
  // False when the unsampled GEM remainder could still exceed the n-th
  // reported entry, so the ranks are not guaranteed.
  bool certified;
  std::size_t gem_terms;  // number of GEM spacings generated
};

// Leading n Poisson-Dirichlet coordinates by ranking GEM spacings. Terms are
// generated until the remainder drops below eps, and then on until it drops
// below the n-th ranked value (at most max_terms in total).
PdSample sample_pd(Theta theta, std::size_t n, double eps, RngStream& rng,
                   std::size_t max_terms = 100000);

struct MoranSample {
  std::vector<double> points;  // descending
  double sigma;                // sum of the points
};

inline constexpr double kMoranUpperCutoff = 50.0;

// Points of intensity theta e^{-x}/x above eps, by thinning a scale-invariant
// sample on (eps, 50) with acceptance e^{-x}.
MoranSample sample_moran(Theta theta, double eps, RngStream& rng);

// Leading n coordinates of the normalized Moran vector. Throws if the sample
// has no points.
RankedSimplex moran_ranked(const MoranSample& sample, std::size_t n);

struct Spacings2D {
  std::vector<double> w;             // decreasing
  std::vector<double> y;             // y-coordinates in decreasing-w order
  std::vector<double> partial_sums;  // X_n = y_0 + ... + y_n, built by running addition
};

// Pairs (W, Y) with Y from a scale-invariant window (e^{-m}, e^{m}) and
// W | Y exponential with mean 1/Y, labelled by decreasing W.
Spacings2D sample_spacings_2d(Theta theta, int m, RngStream& rng);

struct SpacingCountVector {
  std::vector<std::uint64_t> counts;  // counts[k-1] = Z_k
  std::uint64_t length;               // truncation length N
};

// Positions i in [1, n] with xi_i = 1, where xi_i ~ Bernoulli(theta/(theta+i-1))
// independently. Gaps are sampled by inverting the exact survival function.
std::vector<std::uint64_t> feller_success_positions(Theta theta, std::uint64_t n,
                                                    RngStream& rng);

// Z_k for k = 1..b: number of k-spacings between consecutive ones in xi_1..xi_N.
SpacingCountVector feller_binary_spacings(Theta theta, std::uint64_t N, std::uint64_t b,
                                          RngStream& rng);

// Index k drawn with probability weights[k] / sum(weights).
std::size_t size_biased_pick(std::span<const double> weights, RngStream& rng);

// Sum of the points of sample_sipp_unit.
double sample_truncated_sum(Theta theta, double eps, RngStream& rng);

}  // namespace sipp
