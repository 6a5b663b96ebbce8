"""Likelihood evaluation and the three Pickands-function estimators.

Estimators, all returning genuine Pickands functions by construction:

* ``fit_full``  — maximum likelihood over the ellipsoid-intersection
  parameter space Theta_m of all polynomial Pickands functions,
* ``fit_sub``   — maximum likelihood over the polytope of Bernstein
  coefficient vectors of the approximation submodel,
* ``fit_cfg``   — the rank-based CFG estimator with optimal endpoint
  correction, clamped to [V, 1] and convexified by its greatest convex
  minorant on a grid.

The two MLE problems are nonconcave, so both drivers run a derivative-free
simplex search from many feasible random starts under a log-barrier and keep
the best local optimum; the independence parameter (loglik exactly 0) is
always a fallback candidate. Everything is deterministic given the seed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import minimize
from scipy.stats import rankdata

from .bernstein import BernsteinPoly, eval_with_derivatives
from .full_model import (
    FullModelParam,
    coefficient_tensor,
    sample_feasible,
    theta_to_pickands,
)
from .pickands import (
    PickandsPoly,
    a_from_h,
    a_from_h_matrix,
    copula_density,
    vee,
)
from .submodel import PiecewiseLinearPickands, SubmodelParam

LOGLIK_NEG_INF = float("-inf")


@dataclass(frozen=True)
class SampleSet:
    """n pairs (u, v), each strictly inside (0, 1)."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if u.ndim != 1 or u.shape != v.shape or u.size < 1:
            raise ValueError("u and v must be equal-length 1-d arrays with n >= 1")
        for name, x in (("u", u), ("v", v)):
            if np.any(x <= 0.0) or np.any(x >= 1.0) or not np.all(np.isfinite(x)):
                raise ValueError(f"{name} must lie strictly inside (0, 1)")
        u, v = u.copy(), v.copy()
        u.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        return self.u.size

    @property
    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.u.tolist(), self.v.tolist()))

    @staticmethod
    def from_arrays(u, v, ranks: bool = False) -> "SampleSet":
        """Build a sample, optionally replacing margins by midranks/(n+1)."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if ranks:
            n = u.size
            u = rankdata(u, method="average") / (n + 1)
            v = rankdata(v, method="average") / (n + 1)
        return SampleSet(u, v)


@dataclass(frozen=True)
class OptimConfig:
    """Knobs for the multi-start simplex search (deterministic given seed)."""

    starts: int = 20
    seed: int = 0
    barrier: float = 1e-6
    maxfev: int | None = None
    xatol: float = 1e-5
    fatol: float = 1e-6


@dataclass(frozen=True)
class FitResult:
    estimate: Union[PickandsPoly, PiecewiseLinearPickands]
    loglik: float
    param: Union[FullModelParam, SubmodelParam, None]
    starts_used: int
    converged: bool


def _pseudo_angles(data: SampleSet) -> tuple[np.ndarray, np.ndarray]:
    # s = log(uv) < 0 and t = log(v)/s for every pair
    s = np.log(data.u) + np.log(data.v)
    t = np.log(data.v) / s
    return t, s


def _loglik_terms(acoeffs: np.ndarray, t: np.ndarray, s: np.ndarray) -> float:
    # sum of log copula densities; -inf when a density is nonpositive
    val, d1, d2 = eval_with_derivatives(acoeffs, t)
    brace = (val + (1.0 - t) * d1) * (val - t * d1) - t * (1.0 - t) * d2 / s
    if np.any(brace <= 0.0):
        return LOGLIK_NEG_INF
    return float(np.sum(s * (val - 1.0)) + np.sum(np.log(brace)))


def log_likelihood(A, data: SampleSet) -> float:
    """Sum of log copula densities of the data under A.

    A may be a PickandsPoly (fast coefficient path) or a GenericPickands.
    Returns -inf when the density is nonpositive at some observation.
    """
    if isinstance(A, PickandsPoly):
        t, s = _pseudo_angles(data)
        return _loglik_terms(A.poly.coeffs, t, s)
    dens = copula_density(A, data.u, data.v)
    dens = np.atleast_1d(dens)
    if np.any(dens <= 0.0):
        return LOGLIK_NEG_INF
    return float(np.sum(np.log(dens)))


def _nm_options(config: OptimConfig) -> dict:
    opts = {"xatol": config.xatol, "fatol": config.fatol}
    if config.maxfev is not None:
        opts["maxfev"] = config.maxfev
        opts["maxiter"] = config.maxfev
    return opts


def _multistart(pure, barrier_obj, starts: np.ndarray, config: OptimConfig):
    """Run the simplex search from each start; best-of by pure loglik.

    The independence point (loglik exactly 0) is the baseline candidate, so
    the winner never falls below it. Ties keep the earlier candidate.
    """
    best_x, best_ll, best_ok = None, 0.0, True
    for x0 in starts:
        res = minimize(barrier_obj, x0, method="Nelder-Mead",
                       options=_nm_options(config))
        ll = pure(res.x)
        if ll > best_ll:
            best_x, best_ll, best_ok = res.x, ll, bool(res.success)
    return best_x, best_ll, best_ok


def _warn_small_sample(n: int, m: int):
    if n < m + 3:
        warnings.warn(f"sample size n = {n} below m + 3 = {m + 3}; fit may be unstable",
                      UserWarning, stacklevel=3)


def fit_full(data: SampleSet, m: int, config: OptimConfig = OptimConfig()) -> FitResult:
    """Constrained MLE over Theta_m (all polynomial Pickands functions, degree m + 2)."""
    _warn_small_sample(data.n, m)
    t, s = _pseudo_angles(data)
    K = a_from_h_matrix(m) / (m + 1)
    y = (np.arange(m + 1) + 1.0) / (m + 2)
    w0 = (1.0 - y) / (m + 1)
    w1 = y / (m + 1)
    T = coefficient_tensor(m) if m >= 1 else None

    def h_of(x: np.ndarray) -> np.ndarray:
        if m == 0:
            return x
        return np.einsum("kij,i,j->k", T, x, x)

    def acoeffs_of(h: np.ndarray) -> np.ndarray:
        a = 1.0 - K @ h
        a[0] = 1.0
        a[-1] = 1.0
        return a

    def pure(x: np.ndarray) -> float:
        h = h_of(x)
        if m == 0 and x[0] < 0.0:
            return LOGLIK_NEG_INF
        if w0 @ h > 1.0 + 1e-12 or w1 @ h > 1.0 + 1e-12:
            return LOGLIK_NEG_INF
        return _loglik_terms(acoeffs_of(h), t, s)

    def barrier_obj(x: np.ndarray) -> float:
        h = h_of(x)
        slacks = [1.0 - w0 @ h, 1.0 - w1 @ h]
        if m == 0:
            slacks.append(x[0])
        slacks = np.array(slacks)
        if np.any(slacks <= 0.0):
            return np.inf
        ll = _loglik_terms(acoeffs_of(h), t, s)
        if ll == LOGLIK_NEG_INF:
            return np.inf
        return -ll - config.barrier * float(np.sum(np.log(slacks)))

    rng = np.random.default_rng(np.random.SeedSequence(entropy=config.seed, spawn_key=(0,)))
    starts = sample_feasible(m, rng, config.starts)
    best_x, best_ll, best_ok = _multistart(pure, barrier_obj, starts, config)
    if best_x is None:
        theta = np.zeros(m + 1)
    else:
        theta = _canonical_sign(best_x, m)
    param = FullModelParam(m, theta)
    return FitResult(theta_to_pickands(param), best_ll, param, config.starts, best_ok)


def _canonical_sign(theta: np.ndarray, m: int) -> np.ndarray:
    # (P, Q) and their sign flips give the same h; report the representative
    # whose first nonzero entry per block is positive
    theta = theta.copy()
    if m == 0:
        return theta
    split = m // 2 + 1
    for block in (slice(0, split), slice(split, m + 1)):
        seg = theta[block]
        nz = np.nonzero(seg)[0]
        if nz.size and seg[nz[0]] < 0:
            theta[block] = -seg
    return theta


def fit_sub(data: SampleSet, m: int, config: OptimConfig = OptimConfig()) -> FitResult:
    """Constrained MLE over the polytope C_m^+ (Bernstein approximation submodel)."""
    _warn_small_sample(data.n, m)
    t, s = _pseudo_angles(data)
    K = a_from_h_matrix(m) / (m + 1)
    y = (np.arange(m + 1) + 1.0) / (m + 2)
    w0 = (1.0 - y) / (m + 1)
    w1 = y / (m + 1)

    def acoeffs_of(c: np.ndarray) -> np.ndarray:
        a = 1.0 - K @ c
        a[0] = 1.0
        a[-1] = 1.0
        return a

    def pure(c: np.ndarray) -> float:
        if np.any(c < 0.0) or w0 @ c > 1.0 + 1e-12 or w1 @ c > 1.0 + 1e-12:
            return LOGLIK_NEG_INF
        return _loglik_terms(acoeffs_of(c), t, s)

    def barrier_obj(c: np.ndarray) -> float:
        slacks = np.concatenate([c, [1.0 - w0 @ c, 1.0 - w1 @ c]])
        if np.any(slacks <= 0.0):
            return np.inf
        ll = _loglik_terms(acoeffs_of(c), t, s)
        if ll == LOGLIK_NEG_INF:
            return np.inf
        return -ll - config.barrier * float(np.sum(np.log(slacks)))

    rng = np.random.default_rng(np.random.SeedSequence(entropy=config.seed, spawn_key=(1,)))
    starts = _polytope_starts(m, rng, config.starts, w0, w1)
    best_c, best_ll, best_ok = _multistart(pure, barrier_obj, starts, config)
    c = np.zeros(m + 1) if best_c is None else np.maximum(best_c, 0.0)
    param = SubmodelParam(m, c)
    estimate = PickandsPoly(a_from_h(BernsteinPoly(param.c)))
    return FitResult(estimate, best_ll, param, config.starts, best_ok)


def _polytope_starts(m: int, rng: np.random.Generator, count: int,
                     w0: np.ndarray, w1: np.ndarray) -> np.ndarray:
    # Dirichlet-style: random nonnegative direction, scaled to the boundary
    # of the two caps, then pulled inside radially
    g = rng.exponential(size=(count, m + 1))
    d = g / g.sum(axis=1, keepdims=True)
    lam = 1.0 / np.maximum(d @ w0, d @ w1)
    radial = rng.uniform(size=count) ** (1.0 / (m + 1))
    return d * (lam * radial)[:, None]


def greatest_convex_minorant(values, knots=None) -> np.ndarray:
    """Greatest convex function below the given grid values, on the grid.

    Lower convex hull by the monotone-chain sweep; idempotent, equal to the
    input when the input is already convex.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size < 2 or not np.all(np.isfinite(v)):
        raise ValueError("values must be a finite 1-d array with >= 2 points")
    x = np.linspace(0.0, 1.0, v.size) if knots is None else np.asarray(knots, dtype=float)
    hx: list[float] = []
    hy: list[float] = []
    for xi, yi in zip(x, v):
        while len(hx) >= 2 and (
            (hy[-1] - hy[-2]) * (xi - hx[-2]) >= (yi - hy[-2]) * (hx[-1] - hx[-2])
        ):
            hx.pop()
            hy.pop()
        hx.append(xi)
        hy.append(yi)
    return np.interp(x, hx, hy)


def fit_cfg(data: SampleSet, grid: int = 1001) -> FitResult:
    """CFG estimator with optimal endpoint correction, repaired into a
    genuine Pickands function.

    Steps: log A_cfg(t) = -euler_gamma - mean_i log xi_i(t) with
    xi_i(t) = min{(-log u_i)/(1-t), (-log v_i)/t}; endpoint correction
    log A(t) -= (1-t) log A(0) + t log A(1); clamp into [V, 1]; greatest
    convex minorant on the grid. The result satisfies all Pickands
    conditions on the grid.
    """
    if data.n < 2:
        raise ValueError("CFG estimator needs n >= 2")
    if np.ptp(data.u) == 0.0 and np.ptp(data.v) == 0.0:
        raise ValueError("degenerate sample: all pairs identical")
    tgrid = np.linspace(0.0, 1.0, grid)
    log_lu = np.log(-np.log(data.u))
    log_lv = np.log(-np.log(data.v))
    with np.errstate(divide="ignore"):
        log_1mt = np.log1p(-tgrid)
        log_t = np.log(tgrid)
    # log xi_i(t): minimum taken in logs so the endpoints come out exact;
    # chunked over the grid to keep the n-by-grid intermediate small
    mean_logxi = np.empty(grid)
    chunk = max(1, int(2e7) // data.n)
    for j in range(0, grid, chunk):
        sl = slice(j, j + chunk)
        mean_logxi[sl] = np.minimum(
            log_lu[:, None] - log_1mt[None, sl],
            log_lv[:, None] - log_t[None, sl],
        ).mean(axis=0)
    log_a = -np.euler_gamma - mean_logxi
    log_a = log_a - (1.0 - tgrid) * log_a[0] - tgrid * log_a[-1]
    clamped = np.minimum(1.0, np.maximum(np.exp(log_a), vee(tgrid)))
    gcm = greatest_convex_minorant(clamped, tgrid)
    estimate = PiecewiseLinearPickands(tgrid, gcm)
    return FitResult(estimate, float("nan"), None, 0, True)
