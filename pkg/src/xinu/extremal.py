"""The extremal boundary copula family.

For b > 0 the family's first-derivative sections are clamped parabolas

    h(t, v) = clamp(b((1-t)^2 - q(v)), 0, 1),

where the level q(v) in [-1/b, 1] is the unique root of
section_mass(b, q) = v; the copula itself is the running t-integral of the
section, available in closed piecewise form.  For b < 0 the family is the
second-coordinate reflection of the member at -b:

    C_b(u, v) = u - C_{-b}(u, 1-v).

The level solver is plain bisection (section_mass is strictly decreasing,
piecewise smooth with kinks at regime switches, so bisection is
unconditionally safe).  ExtremalCopula memoizes q on a uniform v-grid at
construction; off-grid queries re-solve exactly inside the bracket provided
by the two neighboring cached levels.

Parameters beyond |b| = 1e8 are evaluated as the comonotone/countermonotone
limits and below |b| = 1e-8 as the independence limit, where clamp
arithmetic would otherwise lose all precision.
"""

from __future__ import annotations

import numpy as np

from .copulas import M, PI, W, Copula, _maybe_scalar
from .errors import DomainError
from .sections import (
    classify_regime,
    prim_t,
    section_mass,
    section_square_mass,
    section_weighted_mass,
)

B_LIMIT_HIGH = 1e8
B_LIMIT_LOW = 1e-8
DEFAULT_SOLVER_TOL = 1e-12
DEFAULT_CACHE_SIZE = 4097
_MAX_BISECT = 100


def solve_level(b: float, v, tol: float = DEFAULT_SOLVER_TOL):
    """Solve section_mass(b, q) = v for q in [-1/b, 1] by bisection.

    Vectorized over v; endpoints are exact: v=0 -> q=1, v=1 -> q=-1/b.
    """
    if b <= 0:
        raise DomainError(f"slope b must be > 0, got {b}")
    v = np.asarray(v, dtype=float)
    scalar = v.ndim == 0
    v = np.atleast_1d(v).copy()
    if np.any((v < 0.0) | (v > 1.0)):
        raise DomainError("section mass v must lie in [0, 1]")
    lo = np.full(v.shape, -1.0 / b)
    hi = np.ones(v.shape)
    q = _bisect_level(b, v, lo, hi)
    q[v <= 0.0] = 1.0
    q[v >= 1.0] = -1.0 / b
    return float(q[0]) if scalar else q


def _bisect_level(b, v, lo, hi):
    # 100 halvings shrink any bracket inside [-1/b, 1] to below one ulp, so
    # the residual |section_mass(q) - v| reaches the float64 floor
    # ~ max|dv/dq| * ulp without needing an explicit tolerance test.
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        high = section_mass(b, mid) > v
        lo = np.where(high, mid, lo)
        hi = np.where(high, hi, mid)
    return 0.5 * (lo + hi)


# retained under the contract name used throughout the package
solve_q = solve_level


def h_section(b: float, t, v):
    """Section value h(t, v) of the family member with parameter b != 0."""
    if b == 0:
        raise DomainError("b = 0 is not in the family")
    if b < 0:
        return _maybe_scalar(
            1.0 - h_section(-b, np.asarray(t, dtype=float), 1.0 - np.asarray(v, dtype=float)),
            t, v,
        )
    t = np.asarray(t, dtype=float)
    q = solve_level(b, v)
    out = np.clip(b * ((1.0 - t) ** 2 - q), 0.0, 1.0)
    return _maybe_scalar(out, t, v)


def _cdf_at_level(b: float, u, q: float):
    """Closed-form int_0^u h dt for one section (b > 0), vectorized over u."""
    d = classify_regime(b, q)
    u = np.asarray(u, dtype=float)
    mid = d.a + b * (prim_t(d.x_a, q) - prim_t(1.0 - u, q))
    full = d.a + b * (prim_t(d.x_a, q) - prim_t(d.x_s, q))
    return np.where(u <= d.a, u, np.where(u >= d.s, full, mid))


def extremal_cdf(b: float, u, v):
    """C_b(u, v) in closed piecewise form, for any b != 0."""
    if b == 0:
        raise DomainError("b = 0 is not in the family")
    if b < 0:
        u_arr = np.asarray(u, dtype=float)
        out = u_arr - extremal_cdf(-b, u_arr, 1.0 - np.asarray(v, dtype=float))
        return _maybe_scalar(np.clip(out, 0.0, 1.0), u, v)
    v_arr = np.asarray(v, dtype=float)
    if v_arr.ndim == 0:
        q = solve_level(b, float(v_arr))
        out = _cdf_at_level(b, np.clip(np.asarray(u, dtype=float), 0.0, 1.0), q)
        return _maybe_scalar(np.clip(out, 0.0, 1.0), u, v)
    u_arr, v_arr = np.broadcast_arrays(np.asarray(u, dtype=float), v_arr)
    flat_v = v_arr.reshape(-1)
    flat_u = np.clip(u_arr.reshape(-1), 0.0, 1.0)
    q = solve_level(b, flat_v)
    out = np.empty_like(flat_u)
    for k in range(flat_u.size):
        out[k] = _cdf_at_level(b, flat_u[k], q[k])
    return _maybe_scalar(np.clip(out.reshape(u_arr.shape), 0.0, 1.0), u, v)


def conditional_profile(b: float, v: float, k: int):
    """k equally spaced samples of t -> h(t, v), for plot emission."""
    if k < 2:
        raise DomainError(f"sample count must be >= 2, got {k}")
    t = np.linspace(0.0, 1.0, k)
    h = np.asarray(h_section(b, t, v), dtype=float)
    return list(zip(t.tolist(), h.tolist()))


class ExtremalCopula(Copula):
    """Evaluable copula of the boundary family, any b != 0.

    Exposes exact section integrals and regime-switch breakpoints so the
    measures engine can integrate the kinked sections without tensor
    quadrature error.  The level cache is populated at construction and
    read-only afterwards, so instances are safe to share across threads.
    """

    analytic_dh1 = True

    def __init__(self, b: float, solver_tol: float = DEFAULT_SOLVER_TOL,
                 cache_size: int = DEFAULT_CACHE_SIZE):
        if b == 0 or not np.isfinite(b):
            raise DomainError(f"family parameter must be finite and nonzero, got {b}")
        self.b = float(b)
        self.solver_tol = float(solver_tol)
        self._limit: Copula | None = None
        self._mirror: ExtremalCopula | None = None
        mag = abs(self.b)
        if mag >= B_LIMIT_HIGH:
            self._limit = M if self.b > 0 else W
        elif mag <= B_LIMIT_LOW:
            self._limit = PI
        elif self.b < 0:
            self._mirror = ExtremalCopula(-self.b, solver_tol, cache_size)
        else:
            self._v_grid = np.linspace(0.0, 1.0, cache_size)
            self._q_grid = solve_level(self.b, self._v_grid, solver_tol)
            self._v_grid.setflags(write=False)
            self._q_grid.setflags(write=False)

    # -- level lookup -----------------------------------------------------

    def level(self, v):
        """q(v) for this member (b > 0 only), using the cache as a bracket."""
        if self._limit is not None or self.b < 0:
            raise DomainError("level() is defined for finite-slope members with b > 0")
        b = self.b
        v = np.asarray(v, dtype=float)
        scalar = v.ndim == 0
        v1 = np.atleast_1d(v)
        n = self._v_grid.size - 1
        idx = np.clip((v1 * n).astype(int), 0, n - 1)
        # q decreases in v, so [q(v_{i+1}), q(v_i)] brackets the root
        lo = self._q_grid[idx + 1].copy()
        hi = self._q_grid[idx].copy()
        q = _bisect_level(b, v1, lo, hi)
        q[v1 <= 0.0] = 1.0
        q[v1 >= 1.0] = -1.0 / b
        return float(q[0]) if scalar else q

    # -- copula surface ----------------------------------------------------

    def cdf(self, u, v):
        if self._limit is not None:
            return self._limit.cdf(u, v)
        if self._mirror is not None:
            u_arr = np.asarray(u, dtype=float)
            out = u_arr - np.asarray(self._mirror.cdf(u_arr, 1.0 - np.asarray(v, dtype=float)))
            return _maybe_scalar(np.clip(out, 0.0, 1.0), u, v)
        v_arr = np.asarray(v, dtype=float)
        if v_arr.ndim == 0:
            out = _cdf_at_level(self.b, np.clip(np.asarray(u, dtype=float), 0.0, 1.0),
                                self.level(float(v_arr)))
            return _maybe_scalar(np.clip(out, 0.0, 1.0), u, v)
        u_arr, v_arr = np.broadcast_arrays(np.asarray(u, dtype=float), v_arr)
        flat_u = np.clip(u_arr.reshape(-1), 0.0, 1.0)
        q = self.level(v_arr.reshape(-1))
        out = np.empty_like(flat_u)
        for k in range(flat_u.size):
            out[k] = _cdf_at_level(self.b, flat_u[k], q[k])
        return _maybe_scalar(np.clip(out.reshape(u_arr.shape), 0.0, 1.0), u, v)

    def dh1(self, t, v):
        if self._limit is not None:
            return self._limit.dh1(t, v)
        if self._mirror is not None:
            out = 1.0 - np.asarray(
                self._mirror.dh1(np.asarray(t, dtype=float), 1.0 - np.asarray(v, dtype=float))
            )
            return _maybe_scalar(out, t, v)
        t_arr = np.asarray(t, dtype=float)
        v_arr = np.asarray(v, dtype=float)
        if v_arr.ndim == 0:
            q = self.level(float(v_arr))
            out = np.clip(self.b * ((1.0 - t_arr) ** 2 - q), 0.0, 1.0)
            return _maybe_scalar(out, t, v)
        t_arr, v_arr = np.broadcast_arrays(t_arr, v_arr)
        q = self.level(v_arr.reshape(-1)).reshape(v_arr.shape)
        out = np.clip(self.b * ((1.0 - t_arr) ** 2 - q), 0.0, 1.0)
        return _maybe_scalar(out, t, v)

    # -- exact section integrals for the measures engine -------------------

    def h_square_section(self, v):
        if self._limit is not None:
            return self._limit.h_square_section(v)
        if self._mirror is not None:
            # section is 1 - h_+(t, 1-v): expand the square
            w = 1.0 - np.asarray(v, dtype=float)
            return 1.0 - 2.0 * w + self._mirror.h_square_section(w)
        return section_square_mass(self.b, self.level(v))

    def h_weighted_section(self, v):
        if self._limit is not None:
            return self._limit.h_weighted_section(v)
        if self._mirror is not None:
            w = 1.0 - np.asarray(v, dtype=float)
            return 1.0 / 3.0 - self._mirror.h_weighted_section(w)
        return section_weighted_mass(self.b, self.level(v))

    def section_breakpoints(self):
        if self._limit is not None:
            return self._limit.section_breakpoints()
        if self._mirror is not None:
            return tuple(sorted(1.0 - x for x in self._mirror.section_breakpoints()))
        b = self.b
        brks = {float(section_mass(b, 0.0)), float(section_mass(b, 1.0 - 1.0 / b))}
        return tuple(sorted(x for x in brks if 0.0 < x < 1.0))
