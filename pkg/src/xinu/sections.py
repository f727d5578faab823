"""Clamped-parabola section math.

A section is the map t -> clamp(b((1-t)^2 - q), 0, 1) on [0, 1] for a slope
parameter b > 0 and a level q in [-1/b, 1].  In the reversed coordinate
x = 1 - t the section follows the parabola b(x^2 - q) between the points
where it crosses the levels 1 and 0:

    R = sqrt(q + 1/b)   crossing of level 1  (defined for q >= -1/b),
    r = sqrt(q)         crossing of level 0  (defined for q >= 0),

clipped to the unit interval as X_a = min(1, R) and X_s = r for q >= 0 else 0.
Back in t the section equals 1 on [0, a] with a = max(0, 1 - R), follows the
parabola on (a, s] with s = 1 - X_s, and is 0 on (s, 1].

All three section integrals (plain, squared, weighted by (1-t)^2)
are polynomial in the switching points and evaluate exactly through the
antiderivatives

    T(x; q) = x^3/3 - q x
    F(x; q) = x^5/5 - (2q/3) x^3 + q^2 x
    S(x; q) = x^5/5 - (q/3) x^3.

Depending on where the parabola meets the clamp levels, a section is in one
of four regimes; the level q partitions as

    upper-clamped   q < 0 and R < 1
    unclamped       q < 0 and R >= 1        (possible only for b <= 1)
    double-clamped  0 <= q < 1 - 1/b       (possible only for b > 1)
    lower-clamped   max(1 - 1/b, 0) <= q <= 1

with ties resolved to the regime whose closed condition contains the point.
The integrands agree at regime boundaries, so the tie rule only fixes the
reported tag.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError


class Regime(enum.Enum):
    UPPER_CLAMPED = "upper-clamped"
    UNCLAMPED = "unclamped"
    DOUBLE_CLAMPED = "double-clamped"
    LOWER_CLAMPED = "lower-clamped"


@dataclass(frozen=True)
class RegimeData:
    """Regime tag plus the switching data of one section."""

    tag: Regime
    b: float
    q: float
    R: float
    r: float          # nan when q < 0
    x_a: float        # min(1, R)
    x_s: float        # r for q >= 0 else 0
    a: float          # max(0, 1 - R): end of the h = 1 plateau in t
    s: float          # 1 - x_s: start of the h = 0 tail in t


class SectionIntegrals(NamedTuple):
    marginal: float   # int_0^1 h dt
    square: float     # int_0^1 h^2 dt
    weighted: float   # int_0^1 (1-t)^2 h dt


def _check_q(b: float, q: float) -> None:
    if b <= 0:
        raise DomainError(f"section slope b must be > 0, got {b}")
    if q < -1.0 / b - 1e-12 or q > 1.0 + 1e-12:
        raise DomainError(f"level q={q} outside [-1/b, 1] = [{-1.0 / b}, 1] for b={b}")


def classify_regime(b: float, q: float) -> RegimeData:
    """Classify the section at level q and return its switching data."""
    _check_q(b, q)
    q = min(max(q, -1.0 / b), 1.0)
    R = math.sqrt(max(q + 1.0 / b, 0.0))
    r = math.sqrt(q) if q >= 0.0 else math.nan
    x_a = min(1.0, R)
    x_s = r if q >= 0.0 else 0.0
    a = max(0.0, 1.0 - R)
    s = 1.0 - x_s
    if q < 0.0:
        tag = Regime.UPPER_CLAMPED if R < 1.0 else Regime.UNCLAMPED
    elif b > 1.0 and q < 1.0 - 1.0 / b:
        tag = Regime.DOUBLE_CLAMPED
    else:
        tag = Regime.LOWER_CLAMPED
    return RegimeData(tag=tag, b=b, q=q, R=R, r=r, x_a=x_a, x_s=x_s, a=a, s=s)


def prim_t(x, q):
    """T(x; q) = x^3/3 - q x."""
    return x * x * x / 3.0 - q * x


def prim_f(x, q):
    """F(x; q) = x^5/5 - (2q/3) x^3 + q^2 x."""
    return x ** 5 / 5.0 - (2.0 * q / 3.0) * x ** 3 + q * q * x


def prim_s(x, q):
    """S(x; q) = x^5/5 - (q/3) x^3."""
    return x ** 5 / 5.0 - (q / 3.0) * x ** 3


def section_mass(b, q):
    """int_0^1 clamp(b((1-t)^2 - q), 0, 1) dt, exact; strictly decreasing in q.

    Vectorized over q.  This is the marginal map whose root in q enforces a
    prescribed section mass v.
    """
    q = np.asarray(q, dtype=float)
    scalar = q.ndim == 0
    q = np.atleast_1d(q)
    if b <= 0:
        raise DomainError(f"section slope b must be > 0, got {b}")
    if np.any(q < -1.0 / b - 1e-12) or np.any(q > 1.0 + 1e-12):
        raise DomainError(f"level q outside [-1/b, 1] for b={b}")
    q = np.clip(q, -1.0 / b, 1.0)
    R = np.sqrt(np.maximum(q + 1.0 / b, 0.0))
    x_a = np.minimum(1.0, R)
    x_s = np.sqrt(np.maximum(q, 0.0))
    a = np.maximum(0.0, 1.0 - R)
    out = a + b * (prim_t(x_a, q) - prim_t(x_s, q))
    return float(out[0]) if scalar else out


def _switch_arrays(b, q):
    q = np.clip(np.asarray(q, dtype=float), -1.0 / b, 1.0)
    R = np.sqrt(np.maximum(q + 1.0 / b, 0.0))
    x_a = np.minimum(1.0, R)
    x_s = np.sqrt(np.maximum(q, 0.0))
    a = np.maximum(0.0, 1.0 - R)
    return q, x_a, x_s, a


def section_square_mass(b, q):
    """int_0^1 h^2 dt, exact; vectorized over q."""
    q, x_a, x_s, a = _switch_arrays(b, q)
    out = a + b * b * (prim_f(x_a, q) - prim_f(x_s, q))
    return float(out) if out.ndim == 0 else out


def section_weighted_mass(b, q):
    """int_0^1 (1-t)^2 h dt, exact; vectorized over q."""
    q, x_a, x_s, a = _switch_arrays(b, q)
    out = (1.0 - (1.0 - a) ** 3) / 3.0 + b * (prim_s(x_a, q) - prim_s(x_s, q))
    return float(out) if out.ndim == 0 else out


def section_integrals(b: float, q: float) -> SectionIntegrals:
    """Exact (marginal, square, weighted) integrals of one section."""
    d = classify_regime(b, q)
    marginal = d.a + b * (prim_t(d.x_a, q) - prim_t(d.x_s, q))
    square = d.a + b * b * (prim_f(d.x_a, q) - prim_f(d.x_s, q))
    weighted = (1.0 - (1.0 - d.a) ** 3) / 3.0 + b * (prim_s(d.x_a, q) - prim_s(d.x_s, q))
    return SectionIntegrals(marginal, square, weighted)
