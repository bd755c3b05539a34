#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sipp/checks.hpp"
#include "sipp/coverage.hpp"
#include "sipp/discrete_analogs.hpp"
#include "sipp/fixed_points.hpp"
#include "sipp/rng.hpp"
#include "sipp/samplers.hpp"
#include "sipp/special_functions.hpp"
#include "sipp/tv_distance.hpp"

namespace py = pybind11;

namespace {

py::dict tv_dict(const sipp::TVReport& r) {
  py::dict d;
  d["value"] = r.value;
  d["error_bound"] = r.error_bound;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sipp, m) {
  m.doc() = "Scale-invariant Poisson process toolkit";

  // Special functions.
  m.def("dickman_rho", &sipp::dickman_rho, py::arg("u"));
  m.def("buchstab_omega", &sipp::buchstab_omega, py::arg("u"));
  m.def(
      "density_g", [](double theta, double t) { return sipp::density_g(sipp::Theta(theta), t); },
      py::arg("theta"), py::arg("t"));
  m.def(
      "laplace_T", [](double theta, double s) { return sipp::laplace_T(sipp::Theta(theta), s); },
      py::arg("theta"), py::arg("s"));
  m.def(
      "pd_joint_density",
      [](double theta, std::vector<double> xs) {
        return sipp::pd_joint_density(sipp::Theta(theta), xs);
      },
      py::arg("theta"), py::arg("xs"));
  m.def("hildebrand_approx", &sipp::hildebrand_approx, py::arg("u"));

  // Total variation.
  m.def(
      "h1_explicit", [](double beta) { return tv_dict(sipp::h1_explicit(beta)); },
      py::arg("beta"));
  m.def(
      "h_theta",
      [](double theta, double beta) { return tv_dict(sipp::h_theta(sipp::Theta(theta), beta)); },
      py::arg("theta"), py::arg("beta"));
  m.def(
      "slope_limit", [](double theta) { return sipp::slope_limit(sipp::Theta(theta)); },
      py::arg("theta"));
  m.def(
      "slope_limit_exact", [](double theta) { return sipp::slope_limit_exact(sipp::Theta(theta)); },
      py::arg("theta"));

  // Samplers; each call owns a fresh stream seeded by `seed`.
  m.def(
      "sample_sipp",
      [](double theta, double eps, std::uint64_t seed) {
        sipp::RngStream rng(seed);
        return sipp::sample_sipp_unit(sipp::Theta(theta), eps, rng).points();
      },
      py::arg("theta"), py::arg("eps"), py::arg("seed") = 0);
  m.def(
      "sample_gem",
      [](double theta, std::size_t n, std::uint64_t seed) {
        sipp::RngStream rng(seed);
        return sipp::sample_gem(sipp::Theta(theta), n, rng).entries;
      },
      py::arg("theta"), py::arg("n"), py::arg("seed") = 0);
  m.def(
      "sample_pd",
      [](double theta, std::size_t n, std::uint64_t seed) {
        sipp::RngStream rng(seed);
        return sipp::sample_pd(sipp::Theta(theta), n, 1e-9, rng).ranked.entries();
      },
      py::arg("theta"), py::arg("n"), py::arg("seed") = 0);

  // Fixed points.
  m.def("geometric_base", &sipp::geometric_base, py::arg("k"));
  m.def("periodic_base", &sipp::periodic_base, py::arg("m"), py::arg("k"));
  m.def(
      "entrance_solution",
      [](std::vector<int> pattern, double tol) {
        auto r = sipp::entrance_solution(sipp::DisplacementPermutation::periodic(std::move(pattern)),
                                         tol);
        py::dict d;
        d["ratios"] = r.state.ratios;
        d["certificate"] = r.certificate;
        d["converged"] = r.converged;
        d["forward_ratio"] = r.forward_ratio;
        return d;
      },
      py::arg("pattern"), py::arg("tol") = 1e-12);

  // Discrete analogs.
  m.def(
      "exact_prefix_tv", [](int n, int b) { return tv_dict(sipp::exact_prefix_tv(n, b)); },
      py::arg("n"), py::arg("b"));
  m.def("factorize", &sipp::factorize, py::arg("n"));
  m.def(
      "smooth_rough_counts",
      [](std::uint64_t x, std::uint64_t y) {
        auto c = sipp::smooth_rough_counts(x, y);
        return py::make_tuple(c.psi, c.phi);
      },
      py::arg("x"), py::arg("y"));

  // Coverage.
  m.def(
      "estimate_f",
      [](double theta, double eps, double delta, std::uint64_t trials, std::uint64_t seed) {
        sipp::RngStream rng(seed);
        auto f = sipp::estimate_f(sipp::Theta(theta), eps, delta, trials, rng);
        py::dict d;
        d["lower"] = f.lower;
        d["upper"] = f.upper;
        d["ci_halfwidth"] = f.ci_halfwidth;
        d["t_eps_bound"] = f.t_eps_bound;
        return d;
      },
      py::arg("theta"), py::arg("eps"), py::arg("delta"), py::arg("trials"), py::arg("seed") = 0);
  m.def(
      "coverage_upper_reference",
      [](double theta) { return sipp::coverage_upper_reference(sipp::Theta(theta)); },
      py::arg("theta"));

  m.def("experiment_names", &sipp::experiment_names);
}
