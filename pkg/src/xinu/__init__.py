"""Chatterjee's xi and Blest's nu for bivariate copulas.

Measures, the extremal clamped-parabola copula family tracing the boundary
of the exact attainable (xi, nu)-region, closed-form boundary functions,
region membership, and a grid-discretized constrained optimizer with an
independent first-order oracle.
"""

from .checkerboard import CheckerboardCopula, discretize, mix, shuffle
from .closed_form import (
    GAP_AT_ONE,
    NU_AT_ONE,
    XI_AT_ONE,
    boundary_nu,
    boundary_nu_prime,
    boundary_xi,
    boundary_xi_prime,
    gap,
    regime_decomposition_check,
)
from .copulas import (
    M,
    PI,
    W,
    Copula,
    reference_copula,
    reflect_sigma1,
    reflect_sigma2,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    PrecisionError,
    ValidationError,
    XinuError,
)
from .extremal import ExtremalCopula, conditional_profile, extremal_cdf, h_section, solve_level
from .families import ParametricFamily, parametric_copula
from .measures import (
    MeasurePair,
    QuadratureSpec,
    measures_checkerboard,
    measures_of,
    nu_of,
    nu_of_dh1,
    xi_of,
)
from .optimizer import GridProblem, KktReport, QpSolution, kkt_check, solve_dual, solve_qp_oracle
from .region import (
    RegionBoundary,
    boundary_samples,
    contains,
    max_gap_point,
    nu_max,
    xi_inverse,
)
from .sections import Regime, classify_regime, section_integrals

__version__ = "0.1.0"

__all__ = [
    "CheckerboardCopula", "discretize", "mix", "shuffle",
    "GAP_AT_ONE", "NU_AT_ONE", "XI_AT_ONE",
    "boundary_nu", "boundary_nu_prime", "boundary_xi", "boundary_xi_prime",
    "gap", "regime_decomposition_check",
    "M", "PI", "W", "Copula", "reference_copula", "reflect_sigma1", "reflect_sigma2",
    "ConvergenceError", "DimensionError", "DomainError", "PrecisionError",
    "ValidationError", "XinuError",
    "ExtremalCopula", "conditional_profile", "extremal_cdf", "h_section", "solve_level",
    "ParametricFamily", "parametric_copula",
    "MeasurePair", "QuadratureSpec", "measures_checkerboard", "measures_of",
    "nu_of", "nu_of_dh1", "xi_of",
    "GridProblem", "KktReport", "QpSolution", "kkt_check", "solve_dual", "solve_qp_oracle",
    "RegionBoundary", "boundary_samples", "contains", "max_gap_point", "nu_max", "xi_inverse",
    "Regime", "classify_regime", "section_integrals",
]
