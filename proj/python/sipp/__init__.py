"""Python bindings for the sipp C++ library.

Errors raised by the library (bad theta, out-of-range arguments) surface as
ValueError, IndexError or RuntimeError.
"""

from ._sipp import (
    buchstab_omega,
    coverage_upper_reference,
    density_g,
    dickman_rho,
    entrance_solution,
    estimate_f,
    exact_prefix_tv,
    experiment_names,
    factorize,
    geometric_base,
    h1_explicit,
    h_theta,
    hildebrand_approx,
    laplace_T,
    pd_joint_density,
    periodic_base,
    sample_gem,
    sample_pd,
    sample_sipp,
    slope_limit,
    slope_limit_exact,
    smooth_rough_counts,
)

__all__ = [
    "buchstab_omega",
    "coverage_upper_reference",
    "density_g",
    "dickman_rho",
    "entrance_solution",
    "estimate_f",
    "exact_prefix_tv",
    "experiment_names",
    "factorize",
    "geometric_base",
    "h1_explicit",
    "h_theta",
    "hildebrand_approx",
    "laplace_T",
    "pd_joint_density",
    "periodic_base",
    "sample_gem",
    "sample_pd",
    "sample_sipp",
    "slope_limit",
    "slope_limit_exact",
    "smooth_rough_counts",
]
