#pragma once

// Discrete structures with Poisson-Dirichlet limits: cycle counts of Ewens
// permutations, prime factors of uniform integers, smooth and rough numbers,
// random mapping components and divisor measures.

#include <cstdint>
#include <map>
#include <vector>

#include "sipp/model.hpp"
#include "sipp/rng.hpp"
#include "sipp/stats.hpp"

namespace sipp {

struct CycleCounts {
  std::uint64_t n;
  std::vector<std::uint64_t> counts;  // counts[i-1] = C_i, size n
  std::uint64_t longest() const;
};

// Cycle counts of an Ewens(theta) permutation of [n] by the Feller coupling:
// lengths of the gaps between successive ones in xi_1 ... xi_n 1.
CycleCounts ewens_cycle_counts(Theta theta, std::uint64_t n, RngStream& rng);

// Cycle type (c_1, ..., c_n) -> probability.
using CycleLaw = std::map<std::vector<int>, double>;

struct CycleLawReport {
  int n;
  CycleLaw enumerated;        // from all n! permutations
  CycleLaw conditioned;       // Poisson(1/i) given sum i Z_i = n
  double max_error_conditioned;
  double max_error_shepp_lloyd;  // Poisson(z^i/i) given sum i Z_i = n, z = 1 - 1/n
  double max_error_z_pair;       // z = 1 - 1/n against z = 1/2
};

inline constexpr int kMaxCycleLawN = 8;

CycleLawReport exact_cycle_law_check(int n);

// Law of the cycle type of a uniform permutation from the Cauchy formula.
CycleLaw cauchy_cycle_law(int n);

inline constexpr double kMaxPrefixVectors = 1e7;

// Exact d_TV((C_1..C_b), (Z_1..Z_b)) for uniform permutations of [n], with
// Z_i independent Poisson(1/i), by enumerating prefix vectors. error_bound
// covers the disagreement with the grouped (sum i c_i) evaluation.
TVReport exact_prefix_tv(int n, int b);

// Same distance through the law of T_b = sum_{i<=b} i Z_i only.
double exact_prefix_tv_grouped(int n, int b);

struct FactorMultiset {
  std::uint64_t n_ceiling;
  std::uint64_t value;
  std::vector<std::uint64_t> primes;  // nonincreasing, with multiplicity
  // i-th largest prime factor (1-based), 1 beyond Omega(N).
  std::uint64_t p(std::size_t i) const { return i <= primes.size() ? primes[i - 1] : 1; }
};

inline constexpr std::uint64_t kMaxFactorCeiling = 1000000000ULL;

// Nonincreasing prime factors of n by wheel trial division.
std::vector<std::uint64_t> factorize(std::uint64_t n);

FactorMultiset factor_uniform_integer(std::uint64_t n_ceiling, RngStream& rng);

struct SmoothRoughCounts {
  std::uint64_t psi;  // #{n <= x : every prime factor <= y}
  std::uint64_t phi;  // #{n <= x : no prime factor <= y}
};

inline constexpr std::uint64_t kMaxSieveLimit = 100000000ULL;

// Exact counts by a segmented largest/least prime factor sieve. 1 counts in
// both. y < 2 is accepted (every integer is rough).
SmoothRoughCounts smooth_rough_counts(std::uint64_t x, std::uint64_t y);

// Component sizes of a uniform random map [n] -> [n], nonincreasing.
std::vector<std::uint64_t> random_mapping_components(std::uint64_t n, RngStream& rng);

// Mass 1/tau(m) at log d / log m for each divisor d of m; the point mass at 1
// for m = 1.
DiscreteMeasure divisor_measure(std::uint64_t m);

// Levy distance between the distribution functions of two discrete measures,
// accurate to 1e-12.
double levy_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Fraction of draws with largest prime factor P_1 <= sqrt(N).
double largest_prime_sqrt_fraction(std::uint64_t n_ceiling, std::uint64_t draws, RngStream& rng);

// log d / log N for N uniform on [1, n_ceiling] and d uniform over the
// divisors of N (1 when N = 1).
std::vector<double> divisor_log_ratios(std::uint64_t n_ceiling, std::uint64_t draws,
                                       RngStream& rng);

// The random measure mu_{Y|V}: exact law of sum J_i V_i over the top `depth`
// PD coordinates with fair coins, the unobserved tail replaced by half its mass.
DiscreteMeasure bernoulli_subset_measure(Theta theta, int depth, RngStream& rng);

// Arcsine law discretized at `atoms` midpoint quantiles.
DiscreteMeasure arcsine_reference(int atoms);

// Two-sample KS statistic between the laws of levy_distance(mu_N, ref) for N
// uniform on [1, n_ceiling] and levy_distance(mu_{Y|V}, ref) for theta = 1.
double divisor_levy_discrepancy(std::uint64_t n_ceiling, std::uint64_t draws, RngStream& rng);

}  // namespace sipp
