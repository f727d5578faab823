"""Closed-form boundary values xi*(b), nu*(b) of the extremal family.

For 0 < b <= 1 both are polynomials:

    boundary_xi(b) = 8 b^2 (7 - 3b) / 105
    boundary_nu(b) = 4 b (28 - 9b) / 105.

For b > 1, with g = sqrt((b-1)/b) and A = acosh(sqrt(b)), the raw forms are

    boundary_xi = (183 g - 38 b g - 88 b^2 g + 112 b^2 + 48 b^3 g - 48 b^3
                   - 105 A / b) / 210
    boundary_nu = (87 g / b + 250 g - 376 b g + 448 b + 144 b^2 g - 144 b^2
                   - 105 A / b^2) / 420,

whose O(b^3) terms cancel catastrophically in floating point.  We evaluate
the algebraically identical regrouped forms (all terms O(1), derived by
substituting g = 1 - 1/(b (1+g)) and collapsing the cancelling powers):

    210 xi = 2 (19g + 13) / (1+g)^3 + 183 + 38/(1+g) - 183/(b (1+g))
             - 105 A / b
    420 nu = -72 / (1+g)^2 + 250 + 376/(1+g) + 87/b - 250/(b (1+g))
             - 87/(b^2 (1+g)) - 105 A / b^2.

Both agree with the polynomial branch at b = 1 (values 32/105 and 76/105).
On (1, 1 + 1e-6] the polynomial branch is used directly: it matches the
true branch to second order at b = 1 (the half-integer corrections start
at (b-1)^{5/2}), so the switch costs < 1e-14 while avoiding the residual
sqrt(b-1) noise of the transcendental terms.

Endpoint conventions: value 0 at b = 0 and value 1 at b = infinity.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .measures import panel_rule
from .sections import Regime, classify_regime, section_integrals

XI_AT_ONE = 32.0 / 105.0
NU_AT_ONE = 76.0 / 105.0
GAP_AT_ONE = 44.0 / 105.0

_SERIES_WINDOW = 1e-6


def acosh_sqrt(b: float) -> float:
    """acosh(sqrt(b)) for b >= 1, accurate near b = 1.

    Near 1 the direct log(sqrt(b) + sqrt(b-1)) loses relative precision in
    the log; rewrite as log1p of the exactly-computed excess.
    """
    if b < 1.0:
        raise DomainError(f"acosh_sqrt requires b >= 1, got {b}")
    if b < 2.0:
        # sqrt(b) - 1 without cancellation
        excess = (b - 1.0) / (math.sqrt(b) + 1.0)
        return math.log1p(excess + math.sqrt(b - 1.0))
    return math.log(math.sqrt(b) + math.sqrt(b - 1.0))


def _check_b(b: float) -> float:
    if isinstance(b, complex) or (isinstance(b, float) and math.isnan(b)):
        raise DomainError(f"b must be a real number >= 0, got {b}")
    b = float(b)
    if b < 0.0:
        raise DomainError(f"b must be >= 0 (use the |b| symmetry for b < 0), got {b}")
    return b


def boundary_xi(b: float) -> float:
    """xi along the attainable-region boundary, b in [0, inf]."""
    b = _check_b(b)
    if b == 0.0:
        return 0.0
    if math.isinf(b):
        return 1.0
    if b <= 1.0 + _SERIES_WINDOW:
        return 8.0 * b * b * (7.0 - 3.0 * b) / 105.0
    g = math.sqrt((b - 1.0) / b)
    a = acosh_sqrt(b)
    gp = 1.0 + g
    return (2.0 * (19.0 * g + 13.0) / gp ** 3 + 183.0 + 38.0 / gp
            - 183.0 / (b * gp) - 105.0 * a / b) / 210.0


def boundary_nu(b: float) -> float:
    """nu along the attainable-region boundary, b in [0, inf]."""
    b = _check_b(b)
    if b == 0.0:
        return 0.0
    if math.isinf(b):
        return 1.0
    if b <= 1.0 + _SERIES_WINDOW:
        return 4.0 * b * (28.0 - 9.0 * b) / 105.0
    g = math.sqrt((b - 1.0) / b)
    a = acosh_sqrt(b)
    gp = 1.0 + g
    return (-72.0 / gp ** 2 + 250.0 + 376.0 / gp + 87.0 / b
            - 250.0 / (b * gp) - 87.0 / (b * b * gp) - 105.0 * a / (b * b)) / 420.0


def boundary_xi_prime(b: float) -> float:
    """d/db of boundary_xi; strictly positive on (0, inf)."""
    b = _check_b(b)
    if b <= 0.0 or math.isinf(b):
        raise DomainError(f"derivative requires finite b > 0, got {b}")
    if b <= 1.0 + _SERIES_WINDOW:
        return 8.0 * b * (14.0 - 9.0 * b) / 105.0
    g = math.sqrt((b - 1.0) / b)
    a = acosh_sqrt(b)
    inner = (105.0 * g ** 4 * a + 420.0 * g ** 3 * a + 39.0 * g ** 3
             + 630.0 * g * g * a + 156.0 * g * g + 420.0 * g * a
             + 215.0 * g + 105.0 * a + 80.0)
    return (1.0 - g) ** 2 / (210.0 * (1.0 + g) ** 2) * inner


def boundary_nu_prime(b: float) -> float:
    """d/db of boundary_nu, via the derivative identity nu*' = xi*' / b."""
    return boundary_xi_prime(b) / _check_b(b)


def gap(b: float) -> float:
    """boundary_nu - boundary_xi; unique maximum 44/105 at b = 1."""
    return boundary_nu(b) - boundary_xi(b)


# re-exported: the three exact per-section integrals (marginal, square,
# weighted) that back both the boundary formulas and the measures engine
__all__ = [
    "XI_AT_ONE", "NU_AT_ONE", "GAP_AT_ONE",
    "acosh_sqrt", "boundary_xi", "boundary_nu",
    "boundary_xi_prime", "boundary_nu_prime", "gap",
    "section_integrals", "regime_decomposition_check",
]


def _regime_pieces(b: float):
    """(lower, upper, weight, to_q) integration pieces of the level variable.

    Each piece integrates over the level-1 crossing R (or the level-0
    crossing r) with the substitution weight that turns the v-integral of a
    section functional into an R- or r-integral:

        upper-clamped   R in (0, min(1, 1/sqrt(b)))      weight 2 b R^2
        unclamped       R in (1, 1/sqrt(b))  [b <= 1]    weight 2 b R
        double-clamped  R in (1/sqrt(b), 1)  [b > 1]     weight 1 + b (R-r)^2
        lower-clamped   r in (max(0, sqrt(1-1/b)), 1)    weight 2 b r (1-r)
    """
    sb = math.sqrt(b)
    pieces = []
    if b <= 1.0:
        pieces.append((0.0, 1.0, lambda R: 2.0 * b * R * R, lambda R: R * R - 1.0 / b))
        if b < 1.0:
            pieces.append((1.0, 1.0 / sb, lambda R: 2.0 * b * R, lambda R: R * R - 1.0 / b))
        pieces.append((0.0, 1.0, lambda r: 2.0 * b * r * (1.0 - r), lambda r: r * r))
    else:
        pieces.append((0.0, 1.0 / sb, lambda R: 2.0 * b * R * R, lambda R: R * R - 1.0 / b))

        # double-clamped: integrate in r, where R(r) = sqrt(r^2 + 1/b) is
        # analytic; the R-parametrization has a sqrt singularity at R = 1/sqrt(b)
        def w_double(r):
            R = np.sqrt(r * r + 1.0 / b)
            return (1.0 + b * (R - r) ** 2) * r / R

        pieces.append((0.0, math.sqrt(1.0 - 1.0 / b), w_double, lambda r: r * r))
        pieces.append((math.sqrt(1.0 - 1.0 / b), 1.0,
                       lambda r: 2.0 * b * r * (1.0 - r), lambda r: r * r))
    return pieces


def regime_decomposition_check(b: float, order: int = 64, panels: int = 4):
    """Residuals of the per-regime level-variable decomposition.

    Integrates the squared and weighted section integrals against the
    substitution weights regime by regime and compares the assembled
    functionals with the closed forms.  Returns (|xi residual|,
    |nu residual|).
    """
    b = _check_b(b)
    if b <= 0.0 or math.isinf(b):
        raise DomainError(f"decomposition requires finite b > 0, got {b}")
    xi_sum = 0.0
    nu_sum = 0.0
    for lo, hi, weight, to_q in _regime_pieces(b):
        if hi <= lo:
            continue
        x, w = panel_rule(order, panels, lo, hi)
        gvals = np.empty_like(x)
        hvals = np.empty_like(x)
        for k, xv in enumerate(x):
            si = section_integrals(b, min(max(to_q(xv), -1.0 / b), 1.0))
            gvals[k] = si.square
            hvals[k] = si.weighted
        wsub = np.asarray(weight(x), dtype=float)
        xi_sum += float(np.dot(w, gvals * wsub))
        nu_sum += float(np.dot(w, hvals * wsub))
    return (abs(6.0 * xi_sum - 2.0 - boundary_xi(b)),
            abs(12.0 * nu_sum - 2.0 - boundary_nu(b)))


def regime_tag(b: float, q: float) -> Regime:
    """Regime tag of the section at level q (thin wrapper over sections)."""
    return classify_regime(b, q).tag
