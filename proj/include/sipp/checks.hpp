#pragma once

// Check suites shared by the command-line tool and the Python bindings:
// golden values, exact oracles and pinned-seed statistical tests, plus the
// experiment runners that emit trend rows.

#include <cstdint>
#include <string>
#include <vector>

namespace sipp {

struct CheckRow {
  std::string suite;
  std::string name;
  double value;
  double reference;
  double tolerance;
  bool pass;
};

std::vector<CheckRow> golden_suite();
// n bounds the exact cycle-law enumeration (1..n, n <= 8).
std::vector<CheckRow> oracle_suite(int n = 6);
std::vector<CheckRow> statistical_suite(std::uint64_t seed = 42);

struct ExperimentRow {
  std::string experiment;
  std::uint64_t n;
  std::string parameter;
  std::string statistic;
  double value;
  double tolerance;  // NaN when the row is evidence only
  bool pass;
};

// Names accepted by run_experiment.
std::vector<std::string> experiment_names();

// Runs one experiment. `scale` in (0, 1] shrinks draw counts for quick runs.
std::vector<ExperimentRow> run_experiment(const std::string& name, std::uint64_t seed,
                                          double scale = 1.0);

// Helpers used by several suites.
namespace checks {

// Criterion-style subset-sum oracle on `instances` random instances of
// `points` dyadic points in (0, 1): returns the worst violation (0 when
// outer/inner brackets agree with full enumeration up to their slack).
double subset_sum_oracle_violation(int instances, int points, double delta, std::uint64_t seed);

// Counts of the running-sum process of the two-dimensional construction in
// (a, 2a), one per trial.
std::vector<std::uint64_t> spacing_window_counts(double theta, double a, int trials,
                                                 std::uint64_t seed);

// P(V_1 <= a, V_2 <= b) for PD(1) by quadrature of the joint density.
double pd1_two_coordinate_cdf(double a, double b);

struct ResidualReport {
  double max_residual;
  double table_error;  // certified error bound of the g table
};

// max over t in {0.05, 0.10, ..., 5} of |t g(t) - theta int_{t-1}^t g|, with
// the integral by Gauss-Kronrod on unit pieces (analytic below 1).
ResidualReport size_bias_residual(double theta);

}  // namespace checks

}  // namespace sipp
