#include "sipp/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <cmath>
#include <stdexcept>

namespace sipp::stats {

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("KS needs a nonempty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  double sn = std::sqrt(n);
  return {d, kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS needs nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(i / n - j / m));
  }
  double ne = std::sqrt(n * m / (n + m));
  return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m) {
  double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  double dn = static_cast<double>(n);
  double dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

double ks_one_sample_critical(double alpha, std::size_t n) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

ChiSquareResult chi_square(std::span<const double> observed, std::span<const double> expected,
                           int estimated_params, double min_expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw std::invalid_argument("chi-square needs matching nonempty cell arrays");
  }
  std::vector<double> o;
  std::vector<double> e;
  double acc_o = 0.0;
  double acc_e = 0.0;
  for (std::size_t i = observed.size(); i-- > 0;) {
    acc_o += observed[i];
    acc_e += expected[i];
    if (acc_e >= min_expected) {
      o.push_back(acc_o);
      e.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (e.empty()) {
      o.push_back(acc_o);
      e.push_back(acc_e);
    } else {
      o.back() += acc_o;
      e.back() += acc_e;
    }
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i) {
    double diff = o[i] - e[i];
    stat += diff * diff / e[i];
  }
  int dof = static_cast<int>(o.size()) - 1 - estimated_params;
  if (dof < 1) throw std::invalid_argument("chi-square has no degrees of freedom left");
  double p = boost::math::gamma_q(dof / 2.0, stat / 2.0);
  return {stat, dof, p};
}

ChiSquareResult chi_square_poisson(std::span<const std::uint64_t> counts, double mean) {
  if (counts.empty()) throw std::invalid_argument("no observations");
  std::uint64_t max_count = *std::max_element(counts.begin(), counts.end());
  std::size_t cells = static_cast<std::size_t>(max_count) + 2;
  std::vector<double> observed(cells, 0.0);
  for (auto c : counts) observed[static_cast<std::size_t>(c)] += 1.0;
  boost::math::poisson_distribution<double> law(mean);
  const double n = static_cast<double>(counts.size());
  std::vector<double> expected(cells, 0.0);
  for (std::size_t k = 0; k + 1 < cells; ++k) {
    expected[k] = n * boost::math::pdf(law, static_cast<double>(k));
  }
  expected[cells - 1] = n * boost::math::cdf(boost::math::complement(law, static_cast<double>(cells - 2)));
  return chi_square(observed, expected);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double p = successes / n;
  double denom = 1.0 + z * z / n;
  double centre = (p + z * z / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("variance needs two observations");
  double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

double covariance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("covariance needs paired samples of length >= 2");
  }
  double mx = mean(x);
  double my = mean(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s / static_cast<double>(x.size() - 1);
}

}  // namespace sipp::stats
