#include "sipp/special_functions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "sipp/detail/piecewise.hpp"

namespace sipp {

std::string FunctionName::label() const {
  switch (kind) {
    case FunctionKind::Rho: return "rho";
    case FunctionKind::Omega: return "omega";
    case FunctionKind::GTheta: return "g";
    case FunctionKind::JBeta: return "j";
  }
  return "unknown";
}

double g_at_one(Theta theta) {
  return std::exp(-kEulerGamma * theta.value()) / std::tgamma(theta.value());
}

double FunctionTable::prefix_value(double x) const {
  switch (name.kind) {
    case FunctionKind::Rho: return x < 0.0 ? 0.0 : 1.0;
    case FunctionKind::Omega: return 0.0;
    case FunctionKind::GTheta:
      if (x < 0.0) return 0.0;
      return g_at_one(Theta(name.theta)) * std::pow(x, name.theta - 1.0);
    case FunctionKind::JBeta: return 0.0;
  }
  return 0.0;
}

double FunctionTable::prefix_integral(double a, double b) const {
  b = std::min(b, solved_start);
  switch (name.kind) {
    case FunctionKind::Rho: {
      double lo = std::max(a, 0.0);
      return b > lo ? b - lo : 0.0;
    }
    case FunctionKind::GTheta: {
      double lo = std::max(a, 0.0);
      if (!(b > lo)) return 0.0;
      double th = name.theta;
      return g_at_one(Theta(th)) * (std::pow(b, th) - std::pow(lo, th)) / th;
    }
    default: return 0.0;
  }
}

double FunctionTable::domain_end() const { return solution->end(); }

double FunctionTable::operator()(double x) const {
  if (x < solved_start) return prefix_value(x);
  if (x > domain_end()) throw std::out_of_range(name.label() + " evaluated beyond its table");
  return solution->eval(x);
}

double FunctionTable::left_limit(double x) const {
  if (x <= solved_start) return prefix_value(x);
  if (x > domain_end()) throw std::out_of_range(name.label() + " evaluated beyond its table");
  return solution->eval_left(x);
}

double FunctionTable::integral(double a, double b) const {
  if (!(a < b)) return 0.0;
  double s = 0.0;
  if (a < solved_start) s += prefix_integral(a, std::min(b, solved_start));
  if (b > solved_start) {
    if (b > domain_end() * (1.0 + 1e-15)) {
      throw std::out_of_range(name.label() + " integrated beyond its table");
    }
    s += solution->integral(std::max(a, solved_start), b);
  }
  return s;
}

namespace {

using detail::DelayProblem;
using detail::PiecewiseSolution;

// Largest change at the coarse nodes when every panel is split in two.
double halving_difference(const PiecewiseSolution& coarse, const PiecewiseSolution& fine) {
  double diff = 0.0;
  for (std::size_t p = 0; p < coarse.panel_count(); ++p) {
    for (int k = 0; k < detail::kNodes; ++k) {
      double x = coarse.node(p, k);
      double f = k == detail::kNodes - 1 ? fine.eval_left(x) : fine.eval(x);
      diff = std::max(diff, std::abs(coarse.value(p, k) - f));
    }
  }
  return diff;
}

FunctionTable make_table(FunctionName name, const DelayProblem& problem, double grid_start,
                         double step, const TableOptions& options) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  auto coarse = std::make_shared<PiecewiseSolution>(detail::solve_delay(problem, 0));
  double diff = 0.0;
  if (options.certify) {
    PiecewiseSolution fine = detail::solve_delay(problem, 1);
    diff = halving_difference(*coarse, fine);
  }
  FunctionTable table;
  table.name = name;
  table.grid_start = grid_start;
  table.grid_step = step;
  table.solution = coarse;
  table.solved_start = problem.start;
  double max_abs = 0.0;
  for (std::size_t i = 0;; ++i) {
    double x = grid_start + step * static_cast<double>(i);
    if (x > problem.end * (1.0 + 1e-12)) break;
    x = std::min(x, problem.end);
    double v = table(x);
    if (!std::isfinite(v)) throw ConvergenceError(name.label() + " table has a non-finite value");
    table.values.push_back(v);
    max_abs = std::max(max_abs, std::abs(v));
  }
  for (std::size_t p = 0; p < coarse->panel_count(); ++p) {
    for (int k = 0; k < detail::kNodes; ++k) max_abs = std::max(max_abs, std::abs(coarse->value(p, k)));
  }
  table.error_bound = 2.0 * diff + 64.0 * std::numeric_limits<double>::epsilon() * max_abs;
  return table;
}

std::vector<double> integer_knots(double lo, double hi) {
  std::vector<double> k;
  for (double x = std::ceil(lo); x <= hi; x += 1.0) k.push_back(x);
  return k;
}

}  // namespace

FunctionTable rho_table(double u_max, double step, const TableOptions& options) {
  if (!(u_max > 1.0)) throw std::invalid_argument("rho table needs u_max > 1");
  DelayProblem pr;
  pr.start = 1.0;
  pr.end = u_max;
  pr.h = options.h;
  pr.knots = integer_knots(1.0, u_max);
  pr.coef = 1.0;
  pr.source = [](double, double) { return 0.0; };
  pr.lower = [](double t) { return t - 1.0; };
  pr.upper = [](double t) { return t; };
  pr.implicit = true;
  pr.prefix_integral = [](double a, double b) {
    double lo = std::max(a, 0.0);
    return b > lo ? b - lo : 0.0;
  };
  return make_table({FunctionKind::Rho}, pr, 0.0, step, options);
}

FunctionTable omega_table(double u_max, double step, const TableOptions& options) {
  if (!(u_max > 2.0)) throw std::invalid_argument("omega table needs u_max > 2");
  DelayProblem pr;
  pr.start = 1.0;
  pr.end = u_max;
  pr.h = options.h;
  pr.knots = integer_knots(1.0, u_max);
  pr.coef = 1.0;
  pr.source = [](double, double) { return 1.0; };
  pr.lower = [](double) { return 1.0; };
  pr.upper = [](double t) { return t - 1.0; };
  pr.implicit = false;
  return make_table({FunctionKind::Omega}, pr, 1.0, step, options);
}

FunctionTable g_table(Theta theta, double t_max, double step, const TableOptions& options) {
  if (!(t_max > 1.0)) throw std::invalid_argument("g table needs t_max > 1");
  const double th = theta.value();
  const double c = g_at_one(theta);
  DelayProblem pr;
  pr.start = 1.0;
  pr.end = t_max;
  pr.h = options.h;
  pr.knots = integer_knots(1.0, t_max);
  if (th != std::round(th)) {
    // g has a (t - n)^{theta + n - 1} term just right of each integer n.
    for (double n = 1.0; n <= std::min(t_max, 20.0); n += 1.0) pr.graded_points.push_back(n);
    pr.grading_levels = 64;
  }
  pr.coef = th;
  pr.source = [](double, double) { return 0.0; };
  pr.lower = [](double t) { return t - 1.0; };
  pr.upper = [](double t) { return t; };
  pr.implicit = true;
  pr.prefix_integral = [c, th](double a, double b) {
    double lo = std::max(a, 0.0);
    if (!(b > lo)) return 0.0;
    return c * (std::pow(b, th) - std::pow(lo, th)) / th;
  };
  double grid_start = th < 1.0 ? step : 0.0;
  return make_table({FunctionKind::GTheta, th}, pr, grid_start, step, options);
}

double TruncatedSumLaw::total_mass() const {
  return atom_at_zero + density.integral(beta, density.domain_end());
}

TruncatedSumLaw truncated_sum_law(Theta theta, double beta, double s_max,
                                  const TableOptions& options) {
  if (!(beta > 0.0) || !(beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!(s_max >= 2.0)) throw std::invalid_argument("s_max must be at least 2");
  const double th = theta.value();
  const double atom = std::pow(beta, th);
  DelayProblem pr;
  pr.start = beta;
  pr.end = s_max;
  pr.h = std::min(options.h, beta);
  for (int m = 0; m <= 20; ++m) {
    for (int n = 0; m + n <= 20; ++n) {
      if (m + n == 0) continue;
      pr.knots.push_back(m * beta + n);
    }
  }
  for (double k : integer_knots(1.0, s_max)) pr.knots.push_back(k);
  pr.coef = th;
  pr.source = [th, atom](double, double mid) { return mid < 1.0 ? th * atom : 0.0; };
  pr.lower = [beta](double s) { return std::max(beta, s - 1.0); };
  pr.upper = [beta](double s) { return s - beta; };
  pr.implicit = false;
  FunctionTable density = make_table({FunctionKind::JBeta, th, beta}, pr, beta,
                                     std::min(beta, 1.0 / 64.0), options);
  return TruncatedSumLaw{theta, beta, atom, std::move(density)};
}

const FunctionTable& cached_rho_table() {
  static const FunctionTable table = rho_table(kSpecialFunctionMax, 1.0 / 64.0);
  return table;
}

const FunctionTable& cached_omega_table() {
  static const FunctionTable table = omega_table(kSpecialFunctionMax, 1.0 / 64.0);
  return table;
}

const FunctionTable& cached_g_table(Theta theta) {
  static std::mutex mutex;
  static std::map<double, std::unique_ptr<FunctionTable>> tables;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = tables[theta.value()];
  if (!slot) {
    slot = std::make_unique<FunctionTable>(g_table(theta, kSpecialFunctionMax, 1.0 / 64.0));
  }
  return *slot;
}

double dickman_rho(double u) {
  if (u < 0.0) return 0.0;
  if (u <= 1.0) return 1.0;
  if (u > kSpecialFunctionMax) throw std::out_of_range("dickman_rho is tabulated up to u = 50");
  return cached_rho_table()(u);
}

double buchstab_omega(double u) {
  if (!(u >= 1.0)) throw std::domain_error("buchstab_omega needs u >= 1");
  if (u <= 2.0) return 1.0 / u;
  if (u > kSpecialFunctionMax) throw std::out_of_range("buchstab_omega is tabulated up to u = 50");
  return cached_omega_table()(u);
}

double density_g(Theta theta, double t) {
  if (t < 0.0) return 0.0;
  if (t > kSpecialFunctionMax) throw std::out_of_range("density_g is tabulated up to t = 50");
  if (t <= 1.0) {
    if (t == 0.0) {
      if (theta.value() < 1.0) return std::numeric_limits<double>::infinity();
      return theta.value() == 1.0 ? g_at_one(theta) : 0.0;
    }
    return g_at_one(theta) * std::pow(t, theta.value() - 1.0);
  }
  return cached_g_table(theta)(t);
}

double laplace_T(Theta theta, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("s must be finite and >= 0");
  if (s == 0.0) return 1.0;
  auto f = [s](double x) { return -std::expm1(-s * x) / x; };
  double err = 0.0;
  double integral =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-15, &err);
  return std::exp(-theta.value() * integral);
}

double hildebrand_approx(double u) {
  if (!(u > std::exp(1.0))) throw std::domain_error("hildebrand_approx needs u > e");
  double l = std::log(u);
  double m = std::log(l);
  double l2 = l * l;
  return l + m - 1.0 + m / l - 1.0 / l - m * m / (2.0 * l2) + m / l2 - 2.0 / l2;
}

namespace {

// Returns the sum of xs after checking 1 > x_1 > ... > x_k > 0 and sum < bound.
// Sets `boundary` when the point sits exactly on the closure of the region.
double validate_ordered(std::span<const double> xs, double bound, bool& boundary) {
  if (xs.empty()) throw std::invalid_argument("need at least one coordinate");
  boundary = false;
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double x = xs[i];
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
      throw std::invalid_argument("coordinates must lie in [0, 1]");
    }
    if (x == 0.0 || x == 1.0) boundary = true;
    if (i > 0) {
      if (x > xs[i - 1]) throw std::invalid_argument("coordinates must be decreasing");
      if (x == xs[i - 1]) boundary = true;
    }
    sum += x;
  }
  if (sum > bound) throw std::invalid_argument("coordinates sum beyond the simplex");
  if (sum == bound) boundary = true;
  return sum;
}

// g_theta with the far tail (t > 50, where g < 1e-60) treated as zero.
double g_or_zero(Theta theta, double t) {
  if (t > kSpecialFunctionMax) return 0.0;
  return density_g(theta, t);
}

}  // namespace

double pd_joint_density(Theta theta, std::span<const double> xs) {
  bool boundary = false;
  double sum = validate_ordered(xs, 1.0, boundary);
  if (boundary) return 0.0;
  const double th = theta.value();
  const double xk = xs.back();
  double log_prefactor = kEulerGamma * th + static_cast<double>(xs.size()) * std::log(th) +
                         std::lgamma(th) + (th - 1.0) * std::log(xk);
  for (double x : xs) log_prefactor -= std::log(x);
  return std::exp(log_prefactor) * g_or_zero(theta, (1.0 - sum) / xk);
}

double pd_joint_density_dickman(std::span<const double> xs) {
  bool boundary = false;
  double sum = validate_ordered(xs, 1.0, boundary);
  if (boundary) return 0.0;
  double u = (1.0 - sum) / xs.back();
  double r = u > kSpecialFunctionMax ? 0.0 : dickman_rho(u);
  double prod = 1.0;
  for (double x : xs) prod *= x;
  return r / prod;
}

double conditional_joint_density(Theta theta, double s, std::span<const double> xs) {
  if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
  bool boundary = false;
  double sum = validate_ordered(xs, s, boundary);
  double gs = g_or_zero(theta, s);
  if (!(gs > 1e-280)) {
    throw std::domain_error("g(s) is below the numeric floor; conditioning on T = s is unreliable");
  }
  if (boundary) return 0.0;
  const double th = theta.value();
  const double xk = xs.back();
  double log_factor = static_cast<double>(xs.size()) * std::log(th) + th * std::log(xk) -
                      std::log(xk);
  for (double x : xs) log_factor -= std::log(x);
  return std::exp(log_factor) * g_or_zero(theta, (s - sum) / xk) / gs;
}

}  // namespace sipp
