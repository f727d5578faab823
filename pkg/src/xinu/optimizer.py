"""Grid-discretized solvers for "maximize nu at fixed xi".

The continuous problem: over sections h in L2((0,1)^2) with 0 <= h <= 1 and
column marginals int_0^1 h(t, v) dt = v, maximize the linear functional
int int 2 (1-t)^2 h subject to the quadratic constraint
6 int int h^2 - 2 <= c.  Its unique optimizer is the clamped-parabola
family member with slope b_c fixed by boundary_xi(b_c) = c - the KKT
stationarity condition forces

    h(t, v) = clamp(((1-t)^2 - q(v)) / mu, 0, 1),    b = 1/mu,

with multipliers gamma(v) = 2 q(v), alpha = (2q - 2(1-t)^2)_+ and
beta = (2(1-t)^2 - 2q - 2 mu)_+ for the box constraints.

Two independent routes are implemented on an n_t x n_v midpoint grid with
uniform weights:

``solve_dual``
    exploits the KKT structure directly: the xi-functional of the clamped
    candidate is strictly decreasing in mu, so a scalar bisection on mu
    pins xi(h_mu) = c.  The xi evaluation uses the exact-section quadrature
    of the measures engine, so the recovered b_c and the achieved measures
    carry quadrature-level error, not O(1/n) grid error.  The returned h
    matrix is sampled at the nodes with per-column levels re-solved against
    the *discrete* marginal, making the matrix feasible for the grid
    problem to 1e-12.

``solve_qp_oracle``
    knows nothing of the closed form: projected gradient ascent on the
    Lagrangian for fixed mu, with feasibility restored by alternating
    box-clamp / additive column renormalization, wrapped in an outer
    bisection on mu that targets the grid xi.  First-order and
    alternating-projection tolerances make this a low-accuracy but fully
    independent check of the dual route.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError
from .extremal import ExtremalCopula, solve_level
from .measures import METHOD_REGIME_EXACT, QuadratureSpec, nu_of_dh1, xi_of

_C_CLAMP = 1e-4
_MU_BRACKET = (1e-6, 1e6)
_EXACT_SPEC = QuadratureSpec(order=64, panels=8, method=METHOD_REGIME_EXACT)


@dataclass(frozen=True)
class GridProblem:
    """Midpoint-grid discretization with a target xi level c."""

    c: float
    n_t: int = 40
    n_v: int = 40

    def __post_init__(self):
        if self.n_t < 8 or self.n_v < 8:
            raise DomainError(f"grid orders must be >= 8, got {self.n_t} x {self.n_v}")
        if not 0.0 < self.c < 1.0:
            raise DomainError(f"target xi level must lie in (0, 1), got {self.c}")

    @property
    def t_nodes(self):
        return (np.arange(self.n_t) + 0.5) / self.n_t

    @property
    def v_nodes(self):
        return (np.arange(self.n_v) + 0.5) / self.n_v

    def grid_xi(self, h) -> float:
        return 6.0 * float(np.mean(h * h)) - 2.0

    def grid_nu(self, h) -> float:
        w = (1.0 - self.t_nodes) ** 2
        return 12.0 * float(np.mean(w[:, None] * h)) - 2.0

    def objective(self, h) -> float:
        """The raw linear objective 2 iint (1-t)^2 h of the grid problem."""
        w = (1.0 - self.t_nodes) ** 2
        return 2.0 * float(np.mean(w[:, None] * h))


@dataclass
class QpSolution:
    """Solution record shared by both solvers.

    achieved_xi / achieved_nu are the solution's functional values at the
    solver's native accuracy (quadrature-exact for the dual route, grid
    sums for the oracle); grid_xi / grid_nu are always the midpoint sums of
    the stored h matrix, used for between-route comparisons at matched
    discretization.
    """

    h: np.ndarray
    mu: float
    q: np.ndarray
    achieved_xi: float
    achieved_nu: float
    grid_xi: float
    grid_nu: float
    method: str
    iterations: int = 0

    @property
    def b(self) -> float:
        return 1.0 / self.mu

    def validate(self, p: GridProblem, marginal_tol: float = 1e-10) -> None:
        if np.any(self.h < -1e-12) or np.any(self.h > 1.0 + 1e-12):
            raise DomainError("h violates the box constraints")
        col = self.h.mean(axis=0) - p.v_nodes
        if np.abs(col).max() > marginal_tol:
            raise DomainError(f"column marginals off by {np.abs(col).max():.3e}")
        if self.achieved_xi > p.c + 1e-8:
            raise DomainError(f"xi constraint violated: {self.achieved_xi} > {p.c}")
        if self.mu * abs(self.achieved_xi - p.c) > 1e-6:
            raise DomainError("complementarity residual above 1e-6")


@dataclass(frozen=True)
class KktReport:
    stationarity: float
    marginal: float
    dual_feasibility: float
    complementarity_box: float
    complementarity_xi: float

    def as_dict(self) -> dict:
        return {
            "stationarity": self.stationarity,
            "marginal": self.marginal,
            "dual_feasibility": self.dual_feasibility,
            "complementarity_box": self.complementarity_box,
            "complementarity_xi": self.complementarity_xi,
        }


def _clamp_candidate(b: float, t_nodes, q):
    return np.clip(b * ((1.0 - t_nodes[:, None]) ** 2 - q[None, :]), 0.0, 1.0)


def _discrete_levels(b: float, p: GridProblem):
    """Per-column levels making the midpoint column sums match v_j exactly.

    The discrete marginal q -> mean_i clamp(b((1-t_i)^2 - q), 0, 1) is
    continuous, piecewise linear and strictly decreasing on [-1/b, 1], so
    bisection applies unchanged.
    """
    t = p.t_nodes
    v = p.v_nodes
    lo = np.full(p.n_v, -1.0 / b)
    hi = np.ones(p.n_v)
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        mass = np.clip(b * ((1.0 - t[:, None]) ** 2 - mid[None, :]), 0.0, 1.0).mean(axis=0)
        high = mass > v
        lo = np.where(high, mid, lo)
        hi = np.where(high, hi, mid)
    return 0.5 * (lo + hi)


def solve_dual(p: GridProblem) -> QpSolution:
    """Dual bisection on mu so the clamped candidate meets xi = c."""
    c = min(max(p.c, _C_CLAMP), 1.0 - _C_CLAMP)
    lo, hi = _MU_BRACKET

    def xi_at(mu: float) -> float:
        return xi_of(ExtremalCopula(1.0 / mu), _EXACT_SPEC)

    mu = 1.0
    iters = 0
    for iters in range(1, 201):
        mu = np.sqrt(lo * hi)      # geometric midpoint: mu spans 12 decades
        err = xi_at(mu) - c
        if abs(err) <= 1e-10:
            break
        if err > 0.0:
            lo = mu                # xi too large -> clamp too weak -> raise mu
        else:
            hi = mu
    else:
        raise ConvergenceError("dual bisection on mu did not converge", {"last_mu": mu})

    b = 1.0 / mu
    member = ExtremalCopula(b)
    q = _discrete_levels(b, p)
    h = _clamp_candidate(b, p.t_nodes, q)
    return QpSolution(
        h=h,
        mu=mu,
        q=q,
        achieved_xi=xi_of(member, _EXACT_SPEC),
        achieved_nu=nu_of_dh1(member, _EXACT_SPEC),
        grid_xi=p.grid_xi(h),
        grid_nu=p.grid_nu(h),
        method="dual-bisection",
        iterations=iters,
    )


def _alternating_projection(h, v_nodes, tol: float = 1e-10, max_sweeps: int = 10000):
    """Project onto {0 <= h <= 1} intersected with the column-mean affine set.

    Iterates box clamp followed by additive column recentering; terminates
    when the column residual measured after the clamp is within tol, so the
    returned matrix satisfies the box exactly and the marginal to tol.
    """
    h = np.clip(h, 0.0, 1.0)
    for _ in range(max_sweeps):
        resid = v_nodes - h.mean(axis=0)
        if np.abs(resid).max() <= tol:
            return h
        h = np.clip(h + resid[None, :], 0.0, 1.0)
    raise ConvergenceError(
        "alternating projection stalled", {"column_residual": float(np.abs(resid).max())}
    )


def _ascend(h, x_col, mu: float, v_nodes, max_iter: int = 5000):
    """Projected gradient ascent on the fixed-mu Lagrangian.

    The Lagrangian density 2 (1-t)^2 h - mu h^2 has constant curvature
    -2 mu, so 1/(2 mu + lambda_bound) is a safe base step; backtracking
    halves it whenever the projected step decreases the Lagrangian.
    """
    step0 = 1.0 / (2.0 * mu + 2.0)

    def lagrangian(hh):
        return float(np.mean(2.0 * x_col[:, None] * hh - mu * hh * hh))

    current = lagrangian(h)
    iters = 0
    for iters in range(1, max_iter + 1):
        grad = 2.0 * x_col[:, None] - 2.0 * mu * h
        step = step0
        for _ in range(60):
            cand = _alternating_projection(h + step * grad, v_nodes)
            value = lagrangian(cand)
            if value >= current - 1e-15:
                break
            step *= 0.5
        delta = np.abs(cand - h).max()
        h, current = cand, value
        if delta <= 1e-11:
            break
    return h, iters


def solve_qp_oracle(p: GridProblem, seed: int = 0) -> QpSolution:
    """Independent projected-gradient solver for the grid problem.

    The seed only perturbs the starting point; the optimum of the strongly
    concave inner problem is unique, so distinct seeds agree at
    convergence.
    """
    if p.n_t > 128 or p.n_v > 128:
        raise DomainError("oracle grids are capped at 128 (desk scale)")
    c = min(max(p.c, _C_CLAMP), 1.0 - _C_CLAMP)
    t = p.t_nodes
    v = p.v_nodes
    x_col = (1.0 - t) ** 2

    rng = np.random.default_rng(seed)
    h = _alternating_projection(
        np.broadcast_to(v[None, :], (p.n_t, p.n_v)).copy()
        + 0.01 * rng.standard_normal((p.n_t, p.n_v)),
        v,
    )

    lo, hi = _MU_BRACKET
    total_iters = 0
    mu = 1.0
    for _ in range(200):
        mu = np.sqrt(lo * hi)
        h, used = _ascend(h, x_col, mu, v)
        total_iters += used
        err = p.grid_xi(h) - c
        if abs(err) <= 5e-8:
            break
        if err > 0.0:
            lo = mu
        else:
            hi = mu
    else:
        raise ConvergenceError(
            "oracle bisection on mu did not converge",
            {"grid_xi_residual": float(err), "mu": float(mu)},
        )

    q = solve_level(1.0 / mu, v)
    return QpSolution(
        h=h,
        mu=mu,
        q=np.asarray(q),
        achieved_xi=p.grid_xi(h),
        achieved_nu=p.grid_nu(h),
        grid_xi=p.grid_xi(h),
        grid_nu=p.grid_nu(h),
        method="projected-gradient",
        iterations=total_iters,
    )


def kkt_check(s: QpSolution, p: GridProblem) -> KktReport:
    """Max-norm residuals of the first-order conditions at the grid nodes.

    Multipliers are reconstructed from the solution's own levels:
    gamma_j = 2 q_j, alpha = (gamma - 2 x)_+, beta = (2 x - gamma - 2 mu)_+
    with x = (1-t)^2.
    """
    x = (1.0 - p.t_nodes) ** 2
    gamma = 2.0 * np.asarray(s.q)
    alpha = np.maximum(gamma[None, :] - 2.0 * x[:, None], 0.0)
    beta = np.maximum(2.0 * x[:, None] - gamma[None, :] - 2.0 * s.mu, 0.0)

    stationarity = float(
        np.abs(-2.0 * x[:, None] + 2.0 * s.mu * s.h + gamma[None, :] - alpha + beta).max()
    )
    marginal = float(np.abs(s.h.mean(axis=0) - p.v_nodes).max())
    dual_feas = float(max(-s.mu, 0.0))  # alpha, beta are nonnegative by construction
    compl_box = float(
        max(np.abs(alpha * s.h).max(), np.abs(beta * (1.0 - s.h)).max())
    )
    # complementarity against the xi the solver actually pinned: the exact
    # functional for the dual route, the grid functional for the oracle
    compl_xi = float(s.mu * abs(s.achieved_xi - p.c))
    return KktReport(
        stationarity=stationarity,
        marginal=marginal,
        dual_feasibility=dual_feas,
        complementarity_box=compl_box,
        complementarity_xi=compl_xi,
    )
