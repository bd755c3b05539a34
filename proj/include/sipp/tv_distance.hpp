#pragma once

// Limiting total-variation distance H_theta(beta) between the small-component
// observations of Poisson-Dirichlet(theta) and of the scale-invariant Poisson
// process.
//
// With T_beta the sum of points in (0, beta] and T = T_beta + (T - T_beta)
// (independent summands), H_theta(beta) = d_TV(T_beta, (T_beta | T = 1)).
// T_beta has density g_beta(x) = g(x/beta)/beta. T - T_beta has an atom
// beta^theta at 0 and a density j on (beta, inf), so conditioning on T = 1
// gives a density g_beta(x) j(1-x)/g(1) on (0, 1) plus an atom at x = 1 of
// mass g_beta(1) beta^theta / g(1). Hence
//
//   2 H = int_0^1 g_beta(x) |1 - j(1-x)/g(1)| dx + g_beta(1) beta^theta / g(1)
//         + int_1^inf g_beta(x) dx.

#include <functional>
#include <vector>

#include "sipp/model.hpp"

namespace sipp {

// Explicit theta = 1 route:
// 2 H_1(beta) = int_0^inf |omega(u - t) - e^{-gamma}| rho(t) dt + rho(u), u = 1/beta,
// with omega = 0 below 1.
TVReport h1_explicit(double beta);

// General-theta route through g_theta and the truncated-sum law.
TVReport h_theta(Theta theta, double beta);

// lim H_theta(beta)/beta = |1 - theta| e^{-gamma theta}/Gamma(theta) * theta^theta/(1 + theta).
double slope_limit(Theta theta);

// (1/2)|1 - theta| E|T - theta|, the small-beta limit of H_theta(beta)/beta for
// every theta. Agrees with slope_limit for theta <= 1.
double slope_limit_exact(Theta theta);

// Product binning of observation vectors: dimension d uses edges[d]
// (values below the first edge or at/after the last edge go to overflow cells).
struct Binning {
  std::vector<std::vector<double>> edges;
};

// 1/2 sum |p_hat - q_hat| over cells. This lower-bounds the true TV between
// the underlying laws up to sampling error; error_bound = 1/2 sum over cells
// of the two binomial standard deviations.
TVReport binned_empirical_tv(const std::vector<std::vector<double>>& samples_p,
                             const std::vector<std::vector<double>>& samples_q,
                             const Binning& binning);

namespace detail {

struct AbsIntegral {
  double value;
  double error;
};

// int_a^b |f(x)| w(x) dx for f continuous and w >= 0 smooth on (a, b). Sign
// changes of f are located on a sample grid and refined by bracketing.
// singular_left requests tanh-sinh for an integrable endpoint singularity at a.
AbsIntegral integrate_abs(const std::function<double(double)>& f,
                          const std::function<double(double)>& w, double a, double b,
                          bool singular_left = false);

}  // namespace detail

}  // namespace sipp
