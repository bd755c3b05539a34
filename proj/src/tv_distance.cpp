#include "sipp/tv_distance.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sipp/special_functions.hpp"

namespace sipp {

namespace detail {

namespace {

constexpr int kSignSamples = 32;

double integrate_piece(const std::function<double(double)>& h, double a, double b, bool singular,
                       double& err) {
  if (!(b > a)) return 0.0;
  if (singular) {
    boost::math::quadrature::tanh_sinh<double> ts;
    double l1 = 0.0;
    double e = 0.0;
    double v = ts.integrate(h, a, b, 1e-13, &e, &l1);
    err += e * std::max(1.0, std::abs(v));
    return v;
  }
  double e = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(h, a, b, 12, 1e-13, &e);
  err += e;
  return v;
}

}  // namespace

AbsIntegral integrate_abs(const std::function<double(double)>& f,
                          const std::function<double(double)>& w, double a, double b,
                          bool singular_left) {
  AbsIntegral out{0.0, 0.0};
  if (!(b > a)) return out;
  std::vector<double> cuts{a};
  double prev_x = a + (b - a) * 1e-9;
  double prev_f = f(prev_x);
  for (int i = 1; i <= kSignSamples; ++i) {
    double x = i == kSignSamples ? b - (b - a) * 1e-9 : a + (b - a) * i / kSignSamples;
    double fx = f(x);
    if ((prev_f < 0.0 && fx > 0.0) || (prev_f > 0.0 && fx < 0.0)) {
      boost::uintmax_t iters = 200;
      auto r = boost::math::tools::toms748_solve(
          f, prev_x, x, prev_f, fx, boost::math::tools::eps_tolerance<double>(50), iters);
      cuts.push_back(0.5 * (r.first + r.second));
    }
    prev_x = x;
    prev_f = fx;
  }
  cuts.push_back(b);
  auto fw = [&](double x) { return f(x) * w(x); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double v = integrate_piece(fw, cuts[i], cuts[i + 1], singular_left && i == 0, out.error);
    out.value += std::abs(v);
  }
  return out;
}

}  // namespace detail

namespace {

std::vector<double> sorted_unique_in(std::vector<double> pts, double a, double b) {
  std::vector<double> out{a, b};
  for (double p : pts) {
    if (p > a && p < b) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  std::vector<double> clean;
  for (double p : out) {
    if (clean.empty() || p - clean.back() > 1e-13) clean.push_back(p);
  }
  clean.back() = b;
  return clean;
}

}  // namespace

TVReport h1_explicit(double beta) {
  if (!(beta > 0.0) || !(beta <= 1.0)) throw std::invalid_argument("beta must lie in (0, 1]");
  if (beta == 1.0) return {1.0, TVMethod::ExplicitFormula, 0.0};
  const double u = 1.0 / beta;
  if (u > kSpecialFunctionMax) throw std::out_of_range("h1_explicit supports beta >= 1/50");
  const auto& rho = cached_rho_table();
  const auto& omega = cached_omega_table();
  const double e_minus_gamma = std::exp(-kEulerGamma);

  std::vector<double> breaks;
  for (double k = 1.0; k <= u; k += 1.0) {
    breaks.push_back(k);
    breaks.push_back(u - k);
  }
  auto pieces = sorted_unique_in(breaks, 0.0, u - 1.0);
  auto f = [&](double t) { return omega(u - t) - e_minus_gamma; };
  auto w = [&](double t) { return rho(t); };
  double body = 0.0;
  double quad_err = 0.0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    auto r = detail::integrate_abs(f, w, pieces[i], pieces[i + 1]);
    body += r.value;
    quad_err += r.error;
  }
  // omega(u - t) = 0 for t > u - 1.
  double tail = e_minus_gamma * rho.integral(u - 1.0, kSpecialFunctionMax);
  double value = 0.5 * (body + tail + rho(u));
  double table_err = omega.error_bound * std::exp(kEulerGamma) +
                     rho.error_bound * (kSpecialFunctionMax + 2.0);
  return {value, TVMethod::ExplicitFormula, 0.5 * (table_err + quad_err) + 1e-14};
}

TVReport h_theta(Theta theta, double beta) {
  if (!(beta > 0.0) || !(beta <= 1.0)) throw std::invalid_argument("beta must lie in (0, 1]");
  if (beta == 1.0) return {1.0, TVMethod::GeneralDensities, 0.0};
  const double th = theta.value();
  const double inv_beta = 1.0 / beta;
  const auto& g = cached_g_table(theta);
  const double g1 = g_at_one(theta);
  if (!(g1 > 1e-280)) throw std::domain_error("g(1) is below the numeric floor");
  const TruncatedSumLaw law = truncated_sum_law(theta, beta, 2.0);
  const auto& j = law.density;

  auto g_beta = [&](double x) {
    double t = x * inv_beta;
    if (t > kSpecialFunctionMax) return 0.0;
    return g(t) * inv_beta;
  };
  auto ratio = [&](double x) { return j(1.0 - x) / g1; };
  auto f = [&](double x) { return 1.0 - ratio(x); };

  // g_beta is identically zero (to double precision) beyond 50 beta.
  const double support_end = std::min(1.0, kSpecialFunctionMax * beta);
  std::vector<double> breaks;
  for (double n = 1.0; n * beta < 1.0; n += 1.0) breaks.push_back(n * beta);
  for (int m = 1; m <= 20; ++m) breaks.push_back(1.0 - m * beta);
  auto pieces = sorted_unique_in(breaks, 0.0, support_end);

  double body = 0.0;
  double quad_err = 0.0;
  double conditional_mass = 0.0;
  auto gj = [&](double x) { return g_beta(x) * ratio(x); };
  boost::math::quadrature::tanh_sinh<double> ts;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    bool singular = i == 0 && th < 1.0;
    auto r = detail::integrate_abs(f, g_beta, pieces[i], pieces[i + 1], singular);
    body += r.value;
    quad_err += r.error;
    double e = 0.0;
    if (singular) {
      conditional_mass += ts.integrate(gj, pieces[i], pieces[i + 1], 1e-13, &e);
    } else {
      conditional_mass += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          gj, pieces[i], pieces[i + 1], 12, 1e-13, &e);
    }
  }
  double g_beta_one = inv_beta > kSpecialFunctionMax ? 0.0 : g(inv_beta) * inv_beta;
  double atom = g_beta_one * law.atom_at_zero / g1;
  conditional_mass += atom;
  if (std::abs(conditional_mass - 1.0) > 1e-6) {
    throw ConvergenceError("conditional law integrates to " + std::to_string(conditional_mass) +
                           " instead of 1");
  }
  double tail = inv_beta >= kSpecialFunctionMax ? 0.0 : g.integral(inv_beta, kSpecialFunctionMax);
  double value = 0.5 * (body + atom + tail);

  double max_ratio = 0.0;
  for (double v : j.values) max_ratio = std::max(max_ratio, v / g1);
  double e_gb = g.error_bound * inv_beta;
  double table_err = e_gb * (1.0 + max_ratio) * support_end + j.error_bound / g1 +
                     e_gb * law.atom_at_zero / g1 + g.error_bound * kSpecialFunctionMax;
  return {value, TVMethod::GeneralDensities, 0.5 * (table_err + quad_err) + 1e-14};
}

double slope_limit(Theta theta) {
  const double th = theta.value();
  return std::abs(1.0 - th) * std::exp(-kEulerGamma * th) / std::tgamma(th) *
         std::pow(th, th) / (1.0 + th);
}

double slope_limit_exact(Theta theta) {
  const double th = theta.value();
  const auto& g = cached_g_table(theta);
  // E|T - theta| = 2 E(theta - T)^+ since E T = theta.
  auto f = [&](double t) { return (th - t) * g(t); };
  double lower;
  if (th < 1.0) {
    boost::math::quadrature::tanh_sinh<double> ts;
    lower = ts.integrate(f, 0.0, th, 1e-12);
  } else {
    lower = 0.0;
    for (double a = 0.0; a < th; a += 1.0) {
      lower += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, a, std::min(a + 1.0, th), 12, 1e-13);
    }
  }
  return std::abs(1.0 - th) * lower;
}

TVReport binned_empirical_tv(const std::vector<std::vector<double>>& samples_p,
                             const std::vector<std::vector<double>>& samples_q,
                             const Binning& binning) {
  if (samples_p.empty() || samples_q.empty()) {
    throw std::invalid_argument("binned TV needs nonempty sample sets");
  }
  if (binning.edges.empty()) throw std::invalid_argument("binning needs at least one dimension");
  auto cell = [&](const std::vector<double>& obs) {
    std::vector<int> key(binning.edges.size());
    for (std::size_t d = 0; d < binning.edges.size(); ++d) {
      if (d >= obs.size()) {
        key[d] = -2;  // coordinate absent
        continue;
      }
      const auto& e = binning.edges[d];
      key[d] = static_cast<int>(std::upper_bound(e.begin(), e.end(), obs[d]) - e.begin()) - 1;
    }
    return key;
  };
  std::map<std::vector<int>, std::pair<double, double>> counts;
  for (const auto& s : samples_p) counts[cell(s)].first += 1.0;
  for (const auto& s : samples_q) counts[cell(s)].second += 1.0;
  const double np = static_cast<double>(samples_p.size());
  const double nq = static_cast<double>(samples_q.size());
  double tv = 0.0;
  double err = 0.0;
  for (const auto& [key, c] : counts) {
    double p = c.first / np;
    double q = c.second / nq;
    tv += std::abs(p - q);
    err += std::sqrt(p * (1.0 - p) / np) + std::sqrt(q * (1.0 - q) / nq);
  }
  return {0.5 * tv, TVMethod::EmpiricalBinned, 0.5 * err};
}

}  // namespace sipp
