"""Copula abstraction, the three reference copulas, and reflections.

A copula here is an evaluable object with two entry points:

    cdf(u, v)   the distribution function C(u, v) on the unit square,
    dh1(t, v)   its first partial derivative h(t, v) = dC/du at u = t,

both accepting scalars or numpy arrays (broadcast against each other).
``analytic_dh1`` records whether dh1 is closed form or the central
finite-difference fallback.

Copulas may additionally expose exact section integrals

    h_square_section(v)    = int_0^1 h(t, v)^2 dt
    h_weighted_section(v)  = int_0^1 (1-t)^2 h(t, v) dt
    cdf_weighted_section(v)= int_0^1 (1-u) C(u, v) du

which the measures module uses to bypass tensor quadrature where the inner
integrand is non-smooth (indicator sections of M and W, clamp kinks of the
extremal family).  ``section_breakpoints()`` lists interior v values where
the section structure switches, so outer quadrature can split panels there.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

_FD_STEP = 1e-6


def _ensure_unit(x):
    return np.clip(np.asarray(x, dtype=float), 0.0, 1.0)


def _maybe_scalar(out, *inputs):
    if all(np.ndim(x) == 0 for x in inputs):
        return float(out)
    return out


class Copula:
    """Base class: subclasses implement cdf; dh1 falls back to differencing.

    The finite-difference dh1 uses a central difference with step 1e-6 and
    one-sided differences within a step of the boundary.
    """

    analytic_dh1 = False

    def cdf(self, u, v):
        raise NotImplementedError

    def dh1(self, t, v):
        t = np.asarray(t, dtype=float)
        v = np.asarray(v, dtype=float)
        h = _FD_STEP
        lo = np.maximum(t - h, 0.0)
        hi = np.minimum(t + h, 1.0)
        out = (self.cdf(hi, v) - self.cdf(lo, v)) / np.maximum(hi - lo, 1e-300)
        return _maybe_scalar(np.clip(out, 0.0, 1.0), t, v)


class IndependenceCopula(Copula):
    """Pi(u, v) = u v, with dh1(t, v) = v."""

    analytic_dh1 = True

    def cdf(self, u, v):
        u = _ensure_unit(u)
        v = _ensure_unit(v)
        return _maybe_scalar(u * v, u, v)

    def dh1(self, t, v):
        t = np.asarray(t, dtype=float)
        v = _ensure_unit(v)
        return _maybe_scalar(np.broadcast_arrays(t, v)[1].copy(), t, v)

    def h_square_section(self, v):
        return np.asarray(v, dtype=float) ** 2

    def h_weighted_section(self, v):
        return np.asarray(v, dtype=float) / 3.0

    def cdf_weighted_section(self, v):
        return np.asarray(v, dtype=float) / 6.0

    def section_breakpoints(self):
        return ()


class ComonotoneCopula(Copula):
    """M(u, v) = min(u, v); dh1 is the right-continuous indicator 1{v >= t}."""

    analytic_dh1 = True

    def cdf(self, u, v):
        u = _ensure_unit(u)
        v = _ensure_unit(v)
        return _maybe_scalar(np.minimum(u, v), u, v)

    def dh1(self, t, v):
        t = np.asarray(t, dtype=float)
        v = np.asarray(v, dtype=float)
        return _maybe_scalar((v >= t).astype(float), t, v)

    def h_square_section(self, v):
        return np.asarray(v, dtype=float)

    def h_weighted_section(self, v):
        # int_0^v (1-t)^2 dt
        return (1.0 - (1.0 - np.asarray(v, dtype=float)) ** 3) / 3.0

    def cdf_weighted_section(self, v):
        # int_0^v (1-u) u du + v int_v^1 (1-u) du
        v = np.asarray(v, dtype=float)
        return v * v / 2.0 - v ** 3 / 3.0 + v * (1.0 - v) ** 2 / 2.0

    def section_breakpoints(self):
        return ()


class CountermonotoneCopula(Copula):
    """W(u, v) = max(u + v - 1, 0); dh1 is the indicator 1{t >= 1 - v}."""

    analytic_dh1 = True

    def cdf(self, u, v):
        u = _ensure_unit(u)
        v = _ensure_unit(v)
        return _maybe_scalar(np.maximum(u + v - 1.0, 0.0), u, v)

    def dh1(self, t, v):
        t = np.asarray(t, dtype=float)
        v = np.asarray(v, dtype=float)
        return _maybe_scalar((t >= 1.0 - v).astype(float), t, v)

    def h_square_section(self, v):
        return np.asarray(v, dtype=float)

    def h_weighted_section(self, v):
        # int_{1-v}^1 (1-t)^2 dt
        return np.asarray(v, dtype=float) ** 3 / 3.0

    def cdf_weighted_section(self, v):
        # int_{1-v}^1 (1-u)(u+v-1) du
        return np.asarray(v, dtype=float) ** 3 / 6.0

    def section_breakpoints(self):
        return ()


PI = IndependenceCopula()
M = ComonotoneCopula()
W = CountermonotoneCopula()

_REFERENCE = {"pi": PI, "m": M, "w": W}


def reference_copula(tag: str) -> Copula:
    """Return Pi, M, or W by tag (case-insensitive)."""
    key = tag.strip().lower()
    if key not in _REFERENCE:
        raise DomainError(f"unknown reference copula {tag!r}; expected one of 'pi', 'm', 'w'")
    return _REFERENCE[key]


class Sigma1Reflection(Copula):
    """First-coordinate reflection: C^(u, v) = v - C(1-u, v).

    Reverses the ranks of the first variable; dh1 at (t, v) equals the base
    copula's dh1 at (1-t, v).
    """

    def __init__(self, base: Copula):
        self.base = base
        self.analytic_dh1 = base.analytic_dh1

    def cdf(self, u, v):
        u = _ensure_unit(u)
        v = _ensure_unit(v)
        return _maybe_scalar(v - self.base.cdf(1.0 - u, v), u, v)

    def dh1(self, t, v):
        t = np.asarray(t, dtype=float)
        return self.base.dh1(1.0 - t, v)


class Sigma2Reflection(Copula):
    """Second-coordinate reflection: C^(u, v) = u - C(u, 1-v).

    Reverses the ranks of the second variable; dh1 at (t, v) equals
    1 - dh1_base(t, 1-v).  Leaves the squared-derivative functional intact
    while flipping the sign of concordance-type functionals.
    """

    def __init__(self, base: Copula):
        self.base = base
        self.analytic_dh1 = base.analytic_dh1

    def cdf(self, u, v):
        u = _ensure_unit(u)
        v = _ensure_unit(v)
        return _maybe_scalar(u - self.base.cdf(u, 1.0 - v), u, v)

    def dh1(self, t, v):
        v = np.asarray(v, dtype=float)
        out = 1.0 - self.base.dh1(t, 1.0 - v)
        return _maybe_scalar(out, t, v)


def reflect_sigma1(c: Copula) -> Copula:
    """Reflection in the first coordinate; an involution."""
    if isinstance(c, Sigma1Reflection):
        return c.base
    if isinstance(c, ComonotoneCopula):
        return W
    if isinstance(c, CountermonotoneCopula):
        return M
    if isinstance(c, IndependenceCopula):
        return PI
    return Sigma1Reflection(c)


def reflect_sigma2(c: Copula) -> Copula:
    """Reflection in the second coordinate; an involution.

    For the extremal boundary family the reflection is again a member of the
    family with negated parameter, so it is returned structurally rather
    than wrapped.
    """
    from .extremal import ExtremalCopula

    if isinstance(c, Sigma2Reflection):
        return c.base
    if isinstance(c, ExtremalCopula):
        return ExtremalCopula(-c.b)
    if isinstance(c, ComonotoneCopula):
        return W
    if isinstance(c, CountermonotoneCopula):
        return M
    if isinstance(c, IndependenceCopula):
        return PI
    return Sigma2Reflection(c)
