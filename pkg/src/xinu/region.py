"""The exact attainable (xi, nu)-region.

The region is the symmetric hypograph {(x, y): |y| <= nu_max(x)} of the
concave, strictly increasing envelope nu_max(x) = boundary_nu(b(x)) where
b(x) inverts boundary_xi, together with the vertical segment
{(1, y): -1 <= y <= 1}.  boundary_xi has no closed-form inverse, so the
inversion is bracketed bisection in log b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .closed_form import GAP_AT_ONE, NU_AT_ONE, XI_AT_ONE, boundary_nu, boundary_xi, gap
from .errors import DomainError, XinuError

B_BRACKET = (1e-8, 1e8)

PointClass = Literal["inside", "boundary", "outside"]
Spacing = Literal["uniform-xi", "log-b"]


def xi_inverse(x: float, tol: float = 1e-12):
    """The unique b > 0 with boundary_xi(b) = x, for x in (0, 1).

    Values of x outside the xi-range of the bracket [1e-8, 1e8] are clamped
    to the bracket edge; the second return value flags that case.
    Returns (b, clamped).
    """
    if not 0.0 < x < 1.0:
        raise DomainError(f"xi_inverse requires x in (0, 1), got {x}")
    lo, hi = B_BRACKET
    if x <= boundary_xi(lo):
        return lo, True
    if x >= boundary_xi(hi):
        return hi, True
    llo, lhi = math.log(lo), math.log(hi)
    for _ in range(200):
        lmid = 0.5 * (llo + lhi)
        b = math.exp(lmid)
        err = boundary_xi(b) - x
        if abs(err) <= tol:
            return b, False
        if err < 0.0:
            llo = lmid
        else:
            lhi = lmid
    return math.exp(0.5 * (llo + lhi)), False


def nu_max(x: float) -> float:
    """Largest attainable nu at xi = x: the concave upper envelope.

    Extends continuously with nu_max(0) = 0 and nu_max(1) = 1.
    """
    if x <= 0.0:
        if x < 0.0:
            raise DomainError(f"nu_max requires x in [0, 1], got {x}")
        return 0.0
    if x >= 1.0:
        if x > 1.0:
            raise DomainError(f"nu_max requires x in [0, 1], got {x}")
        return 1.0
    b, _ = xi_inverse(x)
    return boundary_nu(b)


def contains(x: float, y: float, tol: float = 1e-9) -> PointClass:
    """Classify a point against the region (inside / boundary / outside)."""
    if x < -tol or x > 1.0 + tol:
        return "outside"
    if abs(x - 1.0) <= tol:
        return "boundary" if abs(y) <= 1.0 + tol else "outside"
    env = nu_max(min(max(x, 0.0), 1.0))
    if abs(abs(y) - env) <= tol:
        return "boundary"
    return "inside" if abs(y) < env else "outside"


@dataclass(frozen=True)
class BoundarySample:
    b: float          # may be 0 or inf at the endpoint rows
    xi: float
    nu: float


@dataclass(frozen=True)
class RegionBoundary:
    """Sampled upper boundary branch plus the symmetric closure.

    ``samples`` is ordered with strictly increasing xi and nu and includes
    the endpoint rows at b = 0 and b = inf.  The lower branch is the
    mirror nu -> -nu; the remaining boundary is the vertical segment
    {(1, y): -1 <= y <= 1}, described by ``vertical_segment``.
    """

    samples: tuple[BoundarySample, ...]
    spacing: Spacing
    vertical_segment: tuple[float, float] = (-1.0, 1.0)

    def lower_branch(self):
        return tuple(BoundarySample(s.b, s.xi, -s.nu) for s in self.samples)


def boundary_samples(k: int, spacing: Spacing = "uniform-xi") -> RegionBoundary:
    """k samples along the upper branch, plus the b = 0 and b = inf rows.

    uniform-xi spacing inverts boundary_xi at equally spaced xi (the
    b-parametrization crowds samples near b = 0); log-b uses k log-spaced
    b values spanning the inversion bracket.
    """
    if k < 2:
        raise DomainError(f"sample count must be >= 2, got {k}")
    rows: list[BoundarySample] = [BoundarySample(0.0, 0.0, 0.0)]
    if spacing == "uniform-xi":
        for x in np.linspace(0.0, 1.0, k)[1:-1]:
            b, _ = xi_inverse(float(x))
            rows.append(BoundarySample(b, float(x), boundary_nu(b)))
    elif spacing == "log-b":
        for b in np.geomspace(B_BRACKET[0], B_BRACKET[1], k)[1:-1]:
            rows.append(BoundarySample(float(b), boundary_xi(float(b)), boundary_nu(float(b))))
    else:
        raise DomainError(f"unknown spacing {spacing!r}")
    rows.append(BoundarySample(math.inf, 1.0, 1.0))
    return RegionBoundary(samples=tuple(rows), spacing=spacing)


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-9) -> float:
    """Argmax of a unimodal f on [lo, hi] by golden-section search."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def max_gap_point():
    """The point maximizing nu - xi along the boundary.

    Returns (b, xi, nu, gap) = (1, 32/105, 76/105, 44/105) and cross-checks
    the closed form against a golden-section search over the gap.  The gap
    is flat at its maximum (curvature ~0.38), so float noise limits the
    search to ~sqrt(eps / 0.38) ~ 2.4e-8 in b; the check allows 1e-6.
    """
    b_search = golden_section_max(gap, 0.25, 4.0, tol=1e-9)
    if abs(b_search - 1.0) > 1e-6:
        raise XinuError(
            f"gap maximizer cross-check failed: search found b={b_search!r}, expected 1"
        )
    return 1.0, XI_AT_ONE, NU_AT_ONE, GAP_AT_ONE
