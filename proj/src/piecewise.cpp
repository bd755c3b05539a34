#include "sipp/detail/piecewise.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sipp::detail {

namespace {

constexpr std::size_t kDirectSumLimit = 4096;

// Gauss-Legendre rule with 8 points, exact for the degree-15 interpolants.
struct GaussRule {
  std::array<double, 8> x;
  std::array<double, 8> w;
};

const GaussRule& gauss8() {
  static const GaussRule rule = [] {
    using G = boost::math::quadrature::gauss<double, 8>;
    GaussRule r{};
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.x[2 * i] = a[i];
      r.w[2 * i] = w[i];
      r.x[2 * i + 1] = -a[i];
      r.w[2 * i + 1] = w[i];
    }
    return r;
  }();
  return rule;
}

template <typename Real>
Real lagrange(const std::array<double, kNodes>& nodes, const std::array<double, kNodes>& bary,
              int j, Real y) {
  Real denom = 0;
  for (int i = 0; i < kNodes; ++i) {
    Real d = y - static_cast<Real>(nodes[i]);
    if (d == 0) return i == j ? Real(1) : Real(0);
    denom += static_cast<Real>(bary[i]) / d;
  }
  return static_cast<Real>(bary[j]) / (y - static_cast<Real>(nodes[j])) / denom;
}

}  // namespace

const PanelBasis& PanelBasis::get() {
  static const PanelBasis basis = [] {
    PanelBasis b{};
    constexpr int n = kNodes - 1;
    for (int k = 0; k < kNodes; ++k) {
      b.nodes[k] = -std::cos(std::numbers::pi * k / n);
      b.bary[k] = (k % 2 == 0 ? 1.0 : -1.0) * ((k == 0 || k == n) ? 0.5 : 1.0);
    }
    b.nodes[0] = -1.0;
    b.nodes[n] = 1.0;
    if (kNodes % 2 == 1) b.nodes[n / 2] = 0.0;
    const auto& g = gauss8();
    for (int k = 0; k < kNodes; ++k) {
      long double upper = b.nodes[k];
      long double half = (upper + 1.0L) / 2.0L;
      for (int j = 0; j < kNodes; ++j) {
        long double s = 0.0L;
        for (std::size_t q = 0; q < g.x.size(); ++q) {
          long double y = -1.0L + half * (g.x[q] + 1.0L);
          s += g.w[q] * lagrange<long double>(b.nodes, b.bary, j, y);
        }
        b.partial[k][j] = static_cast<double>(half * s);
      }
    }
    b.full = b.partial[n];
    return b;
  }();
  return basis;
}

PiecewiseSolution::PiecewiseSolution(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2) throw std::invalid_argument("need at least one panel");
  values_.assign(panel_count() * kNodes, 0.0);
  panel_integral_.assign(panel_count(), 0.0);
  prefix_.assign(panel_count() + 1, 0.0L);
}

double PiecewiseSolution::node(std::size_t p, int k) const {
  const auto& basis = PanelBasis::get();
  double a = edges_[p];
  double b = edges_[p + 1];
  if (k == 0) return a;
  if (k == kNodes - 1) return b;
  return a + (b - a) * (basis.nodes[k] + 1.0) * 0.5;
}

std::size_t PiecewiseSolution::locate(double x) const {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  if (it == edges_.begin()) return 0;
  std::size_t p = static_cast<std::size_t>(it - edges_.begin()) - 1;
  return std::min(p, panel_count() - 1);
}

std::size_t PiecewiseSolution::locate_left(double x) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), x);
  if (it == edges_.begin()) return 0;
  std::size_t p = static_cast<std::size_t>(it - edges_.begin()) - 1;
  return std::min(p, panel_count() - 1);
}

double PiecewiseSolution::eval_in(std::size_t p, double x) const {
  const auto& basis = PanelBasis::get();
  double a = edges_[p];
  double b = edges_[p + 1];
  double z = (2.0 * x - a - b) / (b - a);
  const double* v = &values_[p * kNodes];
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    double d = z - basis.nodes[i];
    if (d == 0.0) return v[i];
    double w = basis.bary[i] / d;
    num += w * v[i];
    den += w;
  }
  return num / den;
}

double PiecewiseSolution::partial(std::size_t p, double x) const {
  const auto& basis = PanelBasis::get();
  double a = edges_[p];
  double b = edges_[p + 1];
  double half_width = 0.5 * (b - a);
  double z = (2.0 * x - a - b) / (b - a);
  if (z <= -1.0) return 0.0;
  const double* v = &values_[p * kNodes];
  if (z >= 1.0) {
    double s = 0.0;
    for (int j = 0; j < kNodes; ++j) s += basis.full[j] * v[j];
    return half_width * s;
  }
  for (int k = 0; k < kNodes; ++k) {
    if (std::abs(z - basis.nodes[k]) < 1e-12) {
      double s = 0.0;
      for (int j = 0; j < kNodes; ++j) s += basis.partial[k][j] * v[j];
      return half_width * s;
    }
  }
  const auto& g = gauss8();
  double h = 0.5 * (z + 1.0);
  double s = 0.0;
  for (std::size_t q = 0; q < g.x.size(); ++q) {
    double y = -1.0 + h * (g.x[q] + 1.0);
    s += g.w[q] * eval_in(p, a + (y + 1.0) * half_width);
  }
  return half_width * h * s;
}

double PiecewiseSolution::integral(double lo, double hi) const {
  if (solved_ == 0) return 0.0;
  double solved_end = edges_[solved_];
  lo = std::max(lo, edges_.front());
  hi = std::min(hi, solved_end);
  if (!(lo < hi)) return 0.0;
  std::size_t p_lo = locate(lo);
  std::size_t p_hi = hi >= solved_end ? solved_ : locate(hi);
  double part_hi = p_hi >= solved_ ? 0.0 : partial(p_hi, hi);
  if (p_lo == p_hi) return part_hi - partial(p_lo, lo);
  double s = panel_integral_[p_lo] - partial(p_lo, lo);
  std::size_t span = p_hi - p_lo - 1;
  if (span > kDirectSumLimit) {
    s += static_cast<double>(prefix_[p_hi] - prefix_[p_lo + 1]);
  } else {
    for (std::size_t q = p_lo + 1; q < p_hi; ++q) s += panel_integral_[q];
  }
  return s + part_hi;
}

void PiecewiseSolution::set_panel(std::size_t p, const std::array<double, kNodes>& v) {
  if (p != solved_) throw std::logic_error("panels must be filled in order");
  std::copy(v.begin(), v.end(), values_.begin() + static_cast<std::ptrdiff_t>(p * kNodes));
  const auto& basis = PanelBasis::get();
  double s = 0.0;
  for (int j = 0; j < kNodes; ++j) s += basis.full[j] * v[j];
  panel_integral_[p] = 0.5 * (edges_[p + 1] - edges_[p]) * s;
  prefix_[p + 1] = prefix_[p] + panel_integral_[p];
  ++solved_;
}

std::vector<double> build_mesh(const DelayProblem& problem, int refine) {
  if (!(problem.end > problem.start) || !(problem.h > 0.0)) {
    throw std::invalid_argument("mesh requires start < end and h > 0");
  }
  std::vector<double> breaks{problem.start, problem.end};
  for (double k : problem.knots) {
    if (k > problem.start && k < problem.end) breaks.push_back(k);
  }
  for (double g : problem.graded_points) {
    if (g >= problem.start && g < problem.end) breaks.push_back(g);
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> merged;
  for (double b : breaks) {
    if (merged.empty() || b - merged.back() > 1e-13 * std::max(1.0, std::abs(b))) {
      merged.push_back(b);
    }
  }
  merged.back() = problem.end;

  auto is_graded = [&](double x) {
    return std::any_of(problem.graded_points.begin(), problem.graded_points.end(),
                       [&](double g) { return std::abs(g - x) <= 1e-13 * std::max(1.0, std::abs(x)); });
  };

  std::vector<double> edges{merged.front()};
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    double a = merged[i];
    double b = merged[i + 1];
    double uniform_from = a;
    if (problem.grading_levels > 0 && is_graded(a)) {
      double d = std::min(problem.h, b - a);
      for (int l = problem.grading_levels; l >= 1; --l) edges.push_back(a + std::ldexp(d, -l));
      uniform_from = a + d;
      if (uniform_from < b) edges.push_back(uniform_from);
    }
    double len = b - uniform_from;
    if (len > 0.0) {
      auto n = static_cast<std::size_t>(std::ceil(len / problem.h - 1e-9));
      n = std::max<std::size_t>(n, 1);
      for (std::size_t k = 1; k < n; ++k) {
        edges.push_back(uniform_from + len * static_cast<double>(k) / static_cast<double>(n));
      }
    }
    edges.push_back(b);
  }
  // Drop coincident edges left by short segments.
  std::vector<double> clean{edges.front()};
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] > clean.back()) clean.push_back(edges[i]);
  }
  clean.back() = problem.end;

  for (int r = 0; r < refine; ++r) {
    std::vector<double> finer{clean.front()};
    for (std::size_t i = 1; i < clean.size(); ++i) {
      finer.push_back(0.5 * (clean[i - 1] + clean[i]));
      finer.push_back(clean[i]);
    }
    clean = std::move(finer);
  }
  return clean;
}

PiecewiseSolution solve_delay(const DelayProblem& problem, int refine) {
  PiecewiseSolution sol(build_mesh(problem, refine));
  const auto& basis = PanelBasis::get();
  const double start = problem.start;

  auto known_integral = [&](double lo, double hi) {
    double s = 0.0;
    if (!(lo < hi)) return s;
    if (lo < start && problem.prefix_integral) s += problem.prefix_integral(lo, std::min(hi, start));
    if (hi > start) s += sol.integral(std::max(lo, start), hi);
    return s;
  };

  using Mat = Eigen::Matrix<double, kNodes, kNodes>;
  using Vec = Eigen::Matrix<double, kNodes, 1>;
  for (std::size_t p = 0; p < sol.panel_count(); ++p) {
    const double a = sol.edges()[p];
    const double b = sol.edges()[p + 1];
    const double mid = 0.5 * (a + b);
    std::array<double, kNodes> t{};
    Vec rhs;
    for (int k = 0; k < kNodes; ++k) {
      t[k] = sol.node(p, k);
      double lo = problem.lower(t[k]);
      double hi = problem.implicit ? a : problem.upper(t[k]);
      rhs[k] = problem.source(t[k], mid) + problem.coef * known_integral(lo, hi);
    }
    std::array<double, kNodes> v{};
    if (problem.implicit) {
      Mat m;
      const double scale = problem.coef * 0.5 * (b - a);
      for (int k = 0; k < kNodes; ++k) {
        for (int j = 0; j < kNodes; ++j) {
          m(k, j) = (k == j ? t[k] : 0.0) - scale * basis.partial[k][j];
        }
      }
      Vec x = m.partialPivLu().solve(rhs);
      for (int k = 0; k < kNodes; ++k) v[k] = x[k];
    } else {
      for (int k = 0; k < kNodes; ++k) v[k] = rhs[k] / t[k];
    }
    for (double x : v) {
      if (!std::isfinite(x)) throw std::runtime_error("delay solver produced a non-finite value");
    }
    sol.set_panel(p, v);
  }
  return sol;
}

}  // namespace sipp::detail
