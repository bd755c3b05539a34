#pragma once

// Goodness-of-fit helpers used by tests, the check suites and experiments.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sipp::stats {

struct KsResult {
  double statistic;
  double p_value;  // asymptotic Kolmogorov p-value
};

// One-sample KS against a continuous CDF.
KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);

// Two-sample KS.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// P(K > x) for the Kolmogorov distribution.
double kolmogorov_survival(double x);

// Asymptotic critical value of the two-sample statistic at level alpha.
double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m);
double ks_one_sample_critical(double alpha, std::size_t n);

struct ChiSquareResult {
  double statistic;
  int dof;
  double p_value;
};

// Pearson chi-square of observed counts against expected counts. Adjacent
// cells are merged from the right until every expected count is >= min_expected.
ChiSquareResult chi_square(std::span<const double> observed, std::span<const double> expected,
                           int estimated_params = 0, double min_expected = 5.0);

// Chi-square test of integer observations against a Poisson(mean) law, with
// a pooled upper tail.
ChiSquareResult chi_square_poisson(std::span<const std::uint64_t> counts, double mean);

struct Interval {
  double lower;
  double upper;
};

// Wilson score interval for a binomial proportion at normal quantile z.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // unbiased
double covariance(std::span<const double> x, std::span<const double> y);

}  // namespace sipp::stats
