"""Checkerboard copulas: piecewise-uniform mass on an n x n grid.

A checkerboard copula is determined by a nonnegative n x n matrix of cell
masses whose every row and column sums to 1/n.  Its cdf is the bilinear
interpolation of the cumulative mass at the grid corners; dh1 is piecewise
constant in t and piecewise linear in v, which makes the squared and
weighted derivative functionals finite sums (see measures).

The grid convention is mass[i, j] = C-volume of
[(i)/n, (i+1)/n] x [(j)/n, (j+1)/n] with 0-based i (first coordinate) and
j (second coordinate).
"""

from __future__ import annotations

import numpy as np

from .copulas import Copula, _maybe_scalar
from .errors import DimensionError, DomainError, PrecisionError, ValidationError

_SUM_TOL = 1e-12


class CheckerboardCopula(Copula):
    """Piecewise-uniform copula from a doubly-stochastic (scaled) mass grid."""

    analytic_dh1 = True

    def __init__(self, mass, validate: bool = True):
        m = np.array(mass, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"mass must be square, got shape {m.shape}")
        if m.shape[0] < 2:
            raise DomainError("grid order must be >= 2")
        self.n = m.shape[0]
        self.mass = m
        self.mass.setflags(write=False)
        if validate:
            self.validate()
        # corner cdf: cum[i, j] = C(i/n, j/n)
        self._cum = np.zeros((self.n + 1, self.n + 1))
        self._cum[1:, 1:] = np.cumsum(np.cumsum(m, axis=0), axis=1)
        # per-row cumulative mass strictly below column j
        self._cum_rows = np.concatenate(
            [np.zeros((self.n, 1)), np.cumsum(self.mass, axis=1)], axis=1
        )

    def validate(self) -> None:
        n, m = self.n, self.mass
        if np.any(m < -_SUM_TOL):
            raise ValidationError(f"negative cell mass: min={m.min():.3e}")
        row_err = np.abs(m.sum(axis=1) - 1.0 / n).max()
        col_err = np.abs(m.sum(axis=0) - 1.0 / n).max()
        if row_err > _SUM_TOL or col_err > _SUM_TOL:
            raise ValidationError(
                f"marginal sums deviate from 1/n: row {row_err:.3e}, col {col_err:.3e}"
            )

    def cdf(self, u, v):
        n = self.n
        u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
        v = np.clip(np.asarray(v, dtype=float), 0.0, 1.0)
        ub, vb = np.broadcast_arrays(u, v)
        i = np.minimum((ub * n).astype(int), n - 1)
        j = np.minimum((vb * n).astype(int), n - 1)
        au = ub * n - i
        av = vb * n - j
        c00 = self._cum[i, j]
        c10 = self._cum[i + 1, j]
        c01 = self._cum[i, j + 1]
        c11 = self._cum[i + 1, j + 1]
        out = (1 - au) * (1 - av) * c00 + au * (1 - av) * c10 \
            + (1 - au) * av * c01 + au * av * c11
        return _maybe_scalar(out, u, v)

    def dh1(self, t, v):
        n = self.n
        t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
        v = np.clip(np.asarray(v, dtype=float), 0.0, 1.0)
        tb, vb = np.broadcast_arrays(t, v)
        i = np.minimum((tb * n).astype(int), n - 1)
        j = np.minimum((vb * n).astype(int), n - 1)
        av = vb * n - j
        out = n * (self._cum_rows[i, j] + av * self.mass[i, j])
        return _maybe_scalar(np.clip(out, 0.0, 1.0), t, v)


def discretize(c: Copula, n: int) -> CheckerboardCopula:
    """Checkerboard with cell masses equal to the C-volumes of the n x n cells."""
    if n < 2:
        raise DomainError(f"grid order must be >= 2, got {n}")
    g = np.linspace(0.0, 1.0, n + 1)
    uu, vv = np.meshgrid(g, g, indexing="ij")
    corner = np.asarray(c.cdf(uu, vv), dtype=float)
    # enforce exact uniform-marginal boundary values before differencing
    corner[0, :] = 0.0
    corner[:, 0] = 0.0
    corner[-1, :] = g
    corner[:, -1] = g
    mass = np.diff(np.diff(corner, axis=0), axis=1)
    mass = np.maximum(mass, 0.0)
    return CheckerboardCopula(mass)


def shuffle(c: CheckerboardCopula, p: float) -> CheckerboardCopula:
    """Reverse the first-coordinate order of the top p-fraction of the grid.

    Models the transform that maps u <= 1-p to itself and reflects
    u in (1-p, 1]; at grid resolution this reverses the last round(p*n)
    first-coordinate rows.  Requires p*n to be an integer.  Preserves both
    marginals, every column's mass multiset, and hence all functionals of
    the first-derivative sections.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"shuffle fraction must lie in [0, 1], got {p}")
    k = p * c.n
    if abs(k - round(k)) > 1e-9:
        raise PrecisionError(
            f"p={p} is not grid-aligned for n={c.n}; round p to a multiple of 1/{c.n}"
        )
    k = int(round(k))
    mass = c.mass.copy()
    if k > 0:
        mass[c.n - k:, :] = mass[c.n - k:, :][::-1, :]
    return CheckerboardCopula(mass)


def mix(c0: CheckerboardCopula, c1: CheckerboardCopula, lam: float) -> CheckerboardCopula:
    """Cellwise convex combination (1-lam) c0 + lam c1."""
    if c0.n != c1.n:
        raise DimensionError(f"grid orders differ: {c0.n} vs {c1.n}")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"mixture weight must lie in [0, 1], got {lam}")
    return CheckerboardCopula((1.0 - lam) * c0.mass + lam * c1.mass)
