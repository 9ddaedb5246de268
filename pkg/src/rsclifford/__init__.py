"""Verification library for Rarita-Schwinger operators in Clifford analysis.

The package builds the polynomial function spaces of higher-spin Clifford
analysis (spherical harmonics and monogenics, Fischer decomposition, zonal
reproducing kernels), the Rarita-Schwinger operator with its fundamental
solution, and the associated integral transforms (spherical means, Cauchy
and singular Cauchy integrals, the Teodorescu transform and its derivative
decomposition).  Every analytic identity it implements is backed by a
verification suite runnable from the command line::

    rsclifford verify all --m 3 --k 1 --out reports/

Exact rational and floating-point regimes are kept strictly separate; the
identities that hold exactly are checked exactly.
"""

from .algebra import Multivector, RegimeError, blade_grade, blade_product
from .higherspin import (
    FundamentalSolution,
    kernel_dimension,
    rarita_schwinger,
    solve_polynomial_kernel,
)
from .hodge import (
    CoefficientField,
    TruncatedL2Space,
    discrete_bergman_projection,
    hodge_orthogonality_check,
    inner_product,
    l2_norm,
    pointwise_l2_diagnostic,
    polynomial_field,
    zero_trace_field,
)
from .polynomials import CliffordPoly, Monomial, ball_moment, sphere_moment
from .spaces import (
    MonogenicBasis,
    ZonalKernel,
    dump_basis,
    fischer_project,
    harmonic_dimension,
    load_basis,
    monogenic_dimension,
)
from .suites import ConfigError, RunConfig, run_suites
from .transforms import (
    FermionicPoly,
    SphereDomain,
    boundary_trace,
    bump_field,
    cauchy_transform,
    mean_value_ball,
    mean_value_sphere,
    plemelj_boundary_values,
    singular_cauchy,
    teodorescu,
    teodorescu_derivative,
    volume_restriction,
)

__all__ = [
    "Multivector",
    "RegimeError",
    "blade_grade",
    "blade_product",
    "CliffordPoly",
    "Monomial",
    "sphere_moment",
    "ball_moment",
    "MonogenicBasis",
    "ZonalKernel",
    "fischer_project",
    "harmonic_dimension",
    "monogenic_dimension",
    "dump_basis",
    "load_basis",
    "FundamentalSolution",
    "kernel_dimension",
    "rarita_schwinger",
    "solve_polynomial_kernel",
    "FermionicPoly",
    "SphereDomain",
    "boundary_trace",
    "volume_restriction",
    "bump_field",
    "mean_value_sphere",
    "mean_value_ball",
    "cauchy_transform",
    "singular_cauchy",
    "plemelj_boundary_values",
    "teodorescu",
    "teodorescu_derivative",
    "polynomial_field",
    "zero_trace_field",
    "inner_product",
    "l2_norm",
    "hodge_orthogonality_check",
    "pointwise_l2_diagnostic",
    "CoefficientField",
    "TruncatedL2Space",
    "discrete_bergman_projection",
    "RunConfig",
    "ConfigError",
    "run_suites",
]

__version__ = "0.1.0"
