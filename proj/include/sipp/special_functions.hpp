#pragma once

// Dickman rho, Buchstab omega, the density g_theta of T (the sum of the
// scale-invariant Poisson points in (0, 1)), the law of the sum of points in
// (beta, 1], the Laplace transform of T, the Hildebrand expansion, and the
// Poisson-Dirichlet joint densities.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sipp/model.hpp"

namespace sipp {

namespace detail {
class PiecewiseSolution;
}

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

enum class FunctionKind { Rho, Omega, GTheta, JBeta };

struct FunctionName {
  FunctionKind kind;
  double theta = 1.0;
  double beta = 0.0;
  std::string label() const;
};

// A special function tabulated on a uniform grid, with the panel solution
// kept for evaluation between grid points. error_bound is twice the largest
// change seen when every panel is split in two, plus a roundoff floor.
class FunctionTable {
 public:
  FunctionName name;
  double grid_start = 0.0;
  double grid_step = 0.0;
  std::vector<double> values;
  double error_bound = 0.0;

  // Evaluates anywhere in [0, domain_end()]; below the solved range the
  // analytic prefix is used.
  double operator()(double x) const;
  // Left limit, for functions with jumps at panel edges.
  double left_limit(double x) const;
  // Integral over [a, b] of the function.
  double integral(double a, double b) const;
  double domain_end() const;
  double grid_point(std::size_t i) const { return grid_start + grid_step * static_cast<double>(i); }

  // Internal wiring.
  std::shared_ptr<const detail::PiecewiseSolution> solution;
  double solved_start = 0.0;
  double prefix_value(double x) const;
  double prefix_integral(double a, double b) const;
};

struct TableOptions {
  double h = 1.0 / 256.0;  // maximum panel width
  bool certify = true;     // run the step-halving pass
};

// Tables on [0, u_max] (rho, g) or [1, u_max] (omega). For g with theta < 1
// the grid starts at step, since g is unbounded at 0.
FunctionTable rho_table(double u_max, double step, const TableOptions& options = {});
FunctionTable omega_table(double u_max, double step, const TableOptions& options = {});
FunctionTable g_table(Theta theta, double t_max, double step, const TableOptions& options = {});

// Law of T - T_beta: an atom beta^theta at 0 and a density j on (beta, s_max]
// solving s j(s) = theta beta^theta 1{s <= 1} + theta int_{max(beta, s-1)}^{s-beta} j.
struct TruncatedSumLaw {
  Theta theta;
  double beta;
  double atom_at_zero;
  FunctionTable density;
  double total_mass() const;
};

TruncatedSumLaw truncated_sum_law(Theta theta, double beta, double s_max,
                                  const TableOptions& options = {});

// Scalar evaluation through cached certified tables.
double dickman_rho(double u);         // [0, 50]; 0 below 0
double buchstab_omega(double u);      // [1, 50]
double density_g(Theta theta, double t);  // [0, 50]; 0 below 0
const FunctionTable& cached_rho_table();
const FunctionTable& cached_omega_table();
const FunctionTable& cached_g_table(Theta theta);
inline constexpr double kSpecialFunctionMax = 50.0;

// g(1) = e^{-gamma theta} / Gamma(theta).
double g_at_one(Theta theta);

double laplace_T(Theta theta, double s);

// L + M - 1 + M/L - 1/L - M^2/(2L^2) + M/L^2 - 2/L^2 with L = log u, M = log L,
// approximating -log rho(u) / u.
double hildebrand_approx(double u);

// Joint density of the k largest Poisson-Dirichlet coordinates.
double pd_joint_density(Theta theta, std::span<const double> xs);
// The theta = 1 form rho((1 - sum)/x_k) / (x_1...x_k).
double pd_joint_density_dickman(std::span<const double> xs);
// Joint density of the k largest points in (0, 1) given T = s.
double conditional_joint_density(Theta theta, double s, std::span<const double> xs);

}  // namespace sipp
