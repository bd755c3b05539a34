#pragma once

// Piecewise-polynomial solver for renewal-type delay integral equations
//
//   t f(t) = S(t) + c * integral_{lo(t)}^{hi(t)} f(x) dx,   hi(t) <= t,
//
// on [start, end], with f known analytically below start. Each panel carries
// f at 16 Chebyshev-Lobatto nodes; integrals of the interpolant are exact up
// to rounding. When hi(t) == t the panel is solved as a 16x16 linear system,
// otherwise every node value is explicit.

#include <array>
#include <functional>
#include <vector>

namespace sipp::detail {

inline constexpr int kNodes = 16;

struct PanelBasis {
  std::array<double, kNodes> nodes;       // ascending on [-1, 1]
  std::array<double, kNodes> bary;        // barycentric weights
  std::array<double, kNodes> full;        // integral over [-1, 1] of each basis polynomial
  std::array<std::array<double, kNodes>, kNodes> partial;  // partial[k][j] = int_{-1}^{x_k} l_j
  static const PanelBasis& get();
};

class PiecewiseSolution {
 public:
  explicit PiecewiseSolution(std::vector<double> edges);

  std::size_t panel_count() const noexcept { return edges_.size() - 1; }
  const std::vector<double>& edges() const noexcept { return edges_; }
  double start() const noexcept { return edges_.front(); }
  double end() const noexcept { return edges_.back(); }
  double node(std::size_t p, int k) const;
  double value(std::size_t p, int k) const { return values_[p * kNodes + k]; }

  // Panel with edges[p] <= x < edges[p+1] (the last panel is closed).
  std::size_t locate(double x) const;
  // Panel with edges[p] < x <= edges[p+1] (the first panel is closed).
  std::size_t locate_left(double x) const;

  double eval_in(std::size_t p, double x) const;
  double eval(double x) const { return eval_in(locate(x), x); }
  double eval_left(double x) const { return eval_in(locate_left(x), x); }

  // integral_{edges[p]}^{x} f for x in panel p.
  double partial(std::size_t p, double x) const;
  // integral_{lo}^{hi} f over solved panels [0, solved_panels()).
  double integral(double lo, double hi) const;

  std::size_t solved_panels() const noexcept { return solved_; }
  void set_panel(std::size_t p, const std::array<double, kNodes>& v);

 private:
  std::vector<double> edges_;
  std::vector<double> values_;
  std::vector<double> panel_integral_;
  std::vector<long double> prefix_;  // prefix_[p] = integral over panels < p
  std::size_t solved_ = 0;
};

struct DelayProblem {
  double start = 0.0;
  double end = 1.0;
  double h = 1.0 / 256.0;               // maximum panel width
  std::vector<double> knots;            // forced panel boundaries
  std::vector<double> graded_points;    // mesh is refined geometrically just right of these
  int grading_levels = 0;
  double coef = 1.0;
  // Source term; the second argument is the midpoint of the panel holding t,
  // which resolves indicator jumps at panel boundaries.
  std::function<double(double, double)> source;
  std::function<double(double)> lower;
  std::function<double(double)> upper;
  bool implicit = true;                 // upper(t) == t
  // Integral of the analytic prefix over [a, b], b <= start.
  std::function<double(double, double)> prefix_integral;
};

std::vector<double> build_mesh(const DelayProblem& problem, int refine);

PiecewiseSolution solve_delay(const DelayProblem& problem, int refine);

}  // namespace sipp::detail
