"""Five classical one-parameter copula families with analytic dh1.

All families are restricted to their positive-dependence parameter ranges:

    Clayton          theta > 0
    Frank            theta != 0
    Gaussian         theta in (-1, 1)   (theta is the correlation rho)
    Gumbel-Hougaard  theta >= 1
    Joe              theta >= 1

CDFs are the standard textbook forms; dh1 comes from differentiating the
generator representation (Archimedean families) or from the conditional
normal distribution (Gaussian).  Evaluations clip arguments away from the
corner singularities; all formulas are continuous there, so the clip only
protects against inf/nan intermediate values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import owens_t

from .copulas import Copula, _ensure_unit, _maybe_scalar
from .errors import DomainError
from .normal import norm_cdf, norm_ppf

_EPS = 1e-15
_GAUSS_CLIP = 1e-12

FAMILY_DOMAINS = {
    "clayton": "theta > 0",
    "frank": "theta != 0",
    "gaussian": "theta in (-1, 1)",
    "gumbel": "theta >= 1",
    "joe": "theta >= 1",
}


@dataclass(frozen=True)
class ParametricFamily:
    """A validated (family tag, theta) pair."""

    family: str
    theta: float

    def __post_init__(self):
        key = self.family.strip().lower()
        if key not in FAMILY_DOMAINS:
            raise DomainError(
                f"unknown family {self.family!r}; expected one of {sorted(FAMILY_DOMAINS)}"
            )
        object.__setattr__(self, "family", key)
        th = float(self.theta)
        ok = {
            "clayton": th > 0,
            "frank": th != 0,
            "gaussian": -1.0 < th < 1.0,
            "gumbel": th >= 1.0,
            "joe": th >= 1.0,
        }[key]
        if not np.isfinite(th) or not ok:
            raise DomainError(
                f"{key} parameter {self.theta} outside valid range ({FAMILY_DOMAINS[key]})"
            )


class ClaytonCopula(Copula):
    """C(u,v) = (u^-t + v^-t - 1)^(-1/t), theta > 0."""

    analytic_dh1 = True

    def __init__(self, theta: float):
        self.theta = ParametricFamily("clayton", theta).theta

    def cdf(self, u, v):
        th = self.theta
        u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
        v = np.clip(np.asarray(v, dtype=float), 0.0, 1.0)
        uc = np.maximum(u, _EPS)
        vc = np.maximum(v, _EPS)
        out = (uc ** (-th) + vc ** (-th) - 1.0) ** (-1.0 / th)
        out = np.where((u <= 0.0) | (v <= 0.0), 0.0, out)
        return _maybe_scalar(out, u, v)

    def dh1(self, t, v):
        th = self.theta
        t = np.clip(np.asarray(t, dtype=float), _EPS, 1.0)
        v = np.asarray(v, dtype=float)
        vc = np.maximum(v, _EPS)
        out = t ** (-th - 1.0) * (t ** (-th) + vc ** (-th) - 1.0) ** (-(1.0 + th) / th)
        out = np.where(v <= 0.0, 0.0, out)
        return _maybe_scalar(np.clip(out, 0.0, 1.0), t, v)


class FrankCopula(Copula):
    """C(u,v) = -log(1 + (e^-tu - 1)(e^-tv - 1)/(e^-t - 1)) / t, theta != 0."""

    analytic_dh1 = True

    def __init__(self, theta: float):
        self.theta = ParametricFamily("frank", theta).theta

    def cdf(self, u, v):
        th = self.theta
        u = _ensure_unit(u)
        v = _ensure_unit(v)
        gu = np.expm1(-th * u)
        gv = np.expm1(-th * v)
        d = np.expm1(-th)
        out = -np.log1p(gu * gv / d) / th
        return _maybe_scalar(np.clip(out, 0.0, 1.0), u, v)

    def dh1(self, t, v):
        th = self.theta
        t = np.asarray(t, dtype=float)
        v = np.asarray(v, dtype=float)
        gt = np.expm1(-th * t)
        gv = np.expm1(-th * v)
        d = np.expm1(-th)
        out = np.exp(-th * t) * gv / (d + gt * gv)
        return _maybe_scalar(np.clip(out, 0.0, 1.0), t, v)


class GaussianCopula(Copula):
    """Bivariate normal copula with correlation theta in (-1, 1).

    The CDF evaluates the bivariate normal rectangle probability through
    Owen's T function; dh1 is the conditional normal distribution
    Phi((Phi^-1(v) - rho Phi^-1(t)) / sqrt(1 - rho^2)).
    """

    analytic_dh1 = True

    def __init__(self, theta: float):
        self.theta = ParametricFamily("gaussian", theta).theta

    def cdf(self, u, v):
        rho = self.theta
        u = _ensure_unit(u)
        v = _ensure_unit(v)
        uc = np.clip(u, _GAUSS_CLIP, 1.0 - _GAUSS_CLIP)
        vc = np.clip(v, _GAUSS_CLIP, 1.0 - _GAUSS_CLIP)
        x = np.asarray(norm_ppf(uc))
        y = np.asarray(norm_ppf(vc))
        # nudge off the x=0 / y=0 axes so the Owen T arguments stay finite
        x = np.where(np.abs(x) < 1e-13, 1e-13, x)
        y = np.where(np.abs(y) < 1e-13, 1e-13, y)
        s = np.sqrt(1.0 - rho * rho)
        bvn = (
            0.5 * (norm_cdf(x) + norm_cdf(y))
            - owens_t(x, (y - rho * x) / (x * s))
            - owens_t(y, (x - rho * y) / (y * s))
            - np.where(x * y > 0.0, 0.0, 0.5)
        )
        out = np.where((u <= 0.0) | (v <= 0.0), 0.0, np.clip(bvn, 0.0, 1.0))
        out = np.where(u >= 1.0, np.minimum(v, 1.0), out)
        out = np.where(v >= 1.0, np.minimum(u, 1.0), out)
        return _maybe_scalar(out, u, v)

    def dh1(self, t, v):
        rho = self.theta
        t = np.asarray(t, dtype=float)
        v = np.asarray(v, dtype=float)
        tc = np.clip(t, _GAUSS_CLIP, 1.0 - _GAUSS_CLIP)
        vc = np.clip(v, _GAUSS_CLIP, 1.0 - _GAUSS_CLIP)
        s = np.sqrt(1.0 - rho * rho)
        out = norm_cdf((np.asarray(norm_ppf(vc)) - rho * np.asarray(norm_ppf(tc))) / s)
        out = np.where(v <= 0.0, 0.0, np.where(v >= 1.0, 1.0, out))
        return _maybe_scalar(out, t, v)


class GumbelCopula(Copula):
    """C(u,v) = exp(-((-log u)^t + (-log v)^t)^(1/t)), theta >= 1."""

    analytic_dh1 = True

    def __init__(self, theta: float):
        self.theta = ParametricFamily("gumbel", theta).theta

    def cdf(self, u, v):
        th = self.theta
        u = _ensure_unit(u)
        v = _ensure_unit(v)
        uc = np.clip(u, _EPS, 1.0)
        vc = np.clip(v, _EPS, 1.0)
        x = -np.log(uc)
        y = -np.log(vc)
        out = np.exp(-((x ** th + y ** th) ** (1.0 / th)))
        out = np.where((u <= 0.0) | (v <= 0.0), 0.0, out)
        return _maybe_scalar(out, u, v)

    def dh1(self, t, v):
        th = self.theta
        t = np.asarray(t, dtype=float)
        v = np.asarray(v, dtype=float)
        tc = np.clip(t, _EPS, 1.0 - _EPS)
        vc = np.clip(v, _EPS, 1.0)
        x = -np.log(tc)
        y = -np.log(vc)
        a = x ** th + y ** th
        out = np.exp(-(a ** (1.0 / th))) * a ** (1.0 / th - 1.0) * x ** (th - 1.0) / tc
        out = np.where(v <= 0.0, 0.0, out)
        out = np.where(t >= 1.0, np.where(v >= 1.0, 1.0, out), out)
        return _maybe_scalar(np.clip(out, 0.0, 1.0), t, v)


class JoeCopula(Copula):
    """C(u,v) = 1 - ((1-u)^t + (1-v)^t - (1-u)^t (1-v)^t)^(1/t), theta >= 1."""

    analytic_dh1 = True

    def __init__(self, theta: float):
        self.theta = ParametricFamily("joe", theta).theta

    def cdf(self, u, v):
        th = self.theta
        u = _ensure_unit(u)
        v = _ensure_unit(v)
        x = (1.0 - u) ** th
        y = (1.0 - v) ** th
        out = 1.0 - (x + y - x * y) ** (1.0 / th)
        return _maybe_scalar(np.clip(out, 0.0, 1.0), u, v)

    def dh1(self, t, v):
        th = self.theta
        t = np.asarray(t, dtype=float)
        v = np.asarray(v, dtype=float)
        x = (1.0 - np.clip(t, 0.0, 1.0)) ** th
        y = (1.0 - np.clip(v, 0.0, 1.0)) ** th
        a = np.maximum(x + y - x * y, _EPS)
        out = a ** (1.0 / th - 1.0) * (1.0 - t) ** (th - 1.0) * (1.0 - y)
        return _maybe_scalar(np.clip(out, 0.0, 1.0), t, v)


_FAMILY_CLASSES = {
    "clayton": ClaytonCopula,
    "frank": FrankCopula,
    "gaussian": GaussianCopula,
    "gumbel": GumbelCopula,
    "joe": JoeCopula,
}


def parametric_copula(family, theta: float | None = None) -> Copula:
    """Build a parametric copula from a family tag or a ParametricFamily."""
    if isinstance(family, ParametricFamily):
        spec = family
    else:
        if theta is None:
            raise DomainError("theta is required when family is given by tag")
        spec = ParametricFamily(str(family), theta)
    return _FAMILY_CLASSES[spec.family](spec.theta)
