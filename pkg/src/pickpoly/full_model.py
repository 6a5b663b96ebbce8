"""Theta parameterization of all polynomial Pickands functions of degree m + 2.

Nonnegative polynomials on [0,1] factor as h = P^2 + t(1-t) Q^2 (even degree)
or h = t P^2 + (1-t) Q^2 (odd degree). Concatenating the Bernstein
coefficients of P and Q gives a parameter theta in R^(m+1); the Bernstein
coefficients of h_theta are hypergeometric expectations of products of theta
entries, so each coefficient is a positive semidefinite quadratic form in
theta. The admissible set Theta_m is the intersection of the two ellipsoids
where the endpoint-derivative functionals int (1-w) h and int w h stay <= 1.
Degree 0 is parameterized directly by the constant value of h on [0,2].
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .bernstein import BernsteinPoly
from .pickands import PickandsPoly, a_from_h, endpoint_functionals

FEAS_TOL = 1e-12


class InfeasibleThetaError(ValueError):
    """theta outside Theta_m; carries the offending functionals (q0, q1)."""

    def __init__(self, q0: float, q1: float):
        self.q0 = q0
        self.q1 = q1
        super().__init__(f"theta infeasible: int (1-w) h = {q0!r}, int w h = {q1!r}")


@dataclass(frozen=True)
class HypergeoSpec:
    """Hypergeometric(n, M, N): k successes drawing n from M marked of N."""

    n: int
    M: int
    N: int

    def __post_init__(self):
        if not (0 <= self.n <= self.N and 0 <= self.M <= self.N):
            raise ValueError(f"invalid hypergeometric spec {self}")

    def support(self) -> range:
        return range(max(0, self.n + self.M - self.N), min(self.n, self.M) + 1)


def hypergeo_pmf(spec: HypergeoSpec, k: int) -> float:
    """P(Y = k) = C(M,k) C(N-M,n-k) / C(N,n) via log-gamma; 0 off support."""
    if k not in spec.support():
        return 0.0
    n, M, N = spec.n, spec.M, spec.N

    def logc(a, b):
        return gammaln(a + 1) - gammaln(b + 1) - gammaln(a - b + 1)

    return float(np.exp(logc(M, k) + logc(N - M, n - k) - logc(N, n)))


@dataclass(frozen=True)
class FullModelParam:
    """Parameter vector theta of length m + 1.

    For m >= 1 the first floor(m/2) + 1 entries are the Bernstein
    coefficients of P, the rest those of Q. For m = 0 the single entry is the
    constant value of h itself, admissible on [0, 2].
    """

    m: int
    theta: np.ndarray

    def __post_init__(self):
        th = np.array(self.theta, dtype=float)
        if th.ndim != 1 or th.size != self.m + 1:
            raise ValueError(f"theta must have length m + 1 = {self.m + 1}")
        if not np.all(np.isfinite(th)):
            raise ValueError("theta must be finite")
        th.flags.writeable = False
        object.__setattr__(self, "theta", th)

    @property
    def p_block(self) -> np.ndarray:
        if self.m == 0:
            raise ValueError("m = 0 has no (P, Q) blocks")
        return self.theta[: self.m // 2 + 1]

    @property
    def q_block(self) -> np.ndarray:
        if self.m == 0:
            raise ValueError("m = 0 has no (P, Q) blocks")
        return self.theta[self.m // 2 + 1 :]

    def to_json(self) -> dict:
        return {"m": self.m, "theta": [float(x) for x in self.theta]}

    @staticmethod
    def from_json(obj: dict) -> "FullModelParam":
        return FullModelParam(int(obj["m"]), obj["theta"])


@lru_cache(maxsize=None)
def coefficient_tensor(m: int) -> np.ndarray:
    """Symmetric tensor T with c(k, m; h_theta) = theta^T T[k] theta.

    Realizes the hypergeometric expectation formulas for the Bernstein
    coefficients of P^2 + t(1-t) Q^2 (m even) / t P^2 + (1-t) Q^2 (m odd);
    indices outside the P/Q coefficient ranges contribute zero.
    """
    if m < 1:
        raise ValueError("coefficient tensor needs m >= 1")
    T = np.zeros((m + 1, m + 1, m + 1))
    if m % 2 == 0:
        dp = m // 2          # degree of P; Q has degree dp - 1
        qoff = dp + 1
        for k in range(m + 1):
            sp = HypergeoSpec(k, dp, m)
            for y in sp.support():
                if 0 <= k - y <= dp:
                    T[k, y, k - y] += hypergeo_pmf(sp, y)
            if 1 <= k <= m - 1:
                w = k * (m - k) / (m * (m - 1))
                sq = HypergeoSpec(k - 1, dp - 1, m - 2)
                for y in sq.support():
                    if 0 <= k - y - 1 <= dp - 1:
                        T[k, qoff + y, qoff + k - y - 1] += w * hypergeo_pmf(sq, y)
    else:
        d = (m - 1) // 2     # degree of both P and Q
        qoff = d + 1
        for k in range(m + 1):
            if k >= 1:
                sp = HypergeoSpec(k - 1, d, m - 1)
                for y in sp.support():
                    if 0 <= k - 1 - y <= d:
                        T[k, y, k - 1 - y] += (k / m) * hypergeo_pmf(sp, y)
            if k <= m - 1:
                sq = HypergeoSpec(k, d, m - 1)
                for y in sq.support():
                    if 0 <= k - y <= d:
                        T[k, qoff + y, qoff + k - y] += ((m - k) / m) * hypergeo_pmf(sq, y)
    T = 0.5 * (T + np.transpose(T, (0, 2, 1)))
    T.flags.writeable = False
    return T


@lru_cache(maxsize=None)
def form_matrices(m: int) -> tuple[np.ndarray, np.ndarray]:
    """(Q0, Q1) with int (1-w) h_theta = theta^T Q0 theta, int w h_theta = theta^T Q1 theta."""
    T = coefficient_tensor(m)
    y = (np.arange(m + 1) + 1.0) / (m + 2)
    Q0 = np.tensordot(1.0 - y, T, axes=(0, 0)) / (m + 1)
    Q1 = np.tensordot(y, T, axes=(0, 0)) / (m + 1)
    Q0.flags.writeable = False
    Q1.flags.writeable = False
    return Q0, Q1


def theta_to_h(param: FullModelParam) -> BernsteinPoly:
    """Spectral-density polynomial h_theta of degree m (nonnegative by construction)."""
    if param.m == 0:
        return BernsteinPoly(param.theta)
    T = coefficient_tensor(param.m)
    th = param.theta
    return BernsteinPoly(np.einsum("kij,i,j->k", T, th, th))


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    q0: float
    q1: float


def feasibility(param: FullModelParam) -> Feasibility:
    """Membership of theta in Theta_m = E0 cap E1 (boundary points included).

    q0 = int (1-w) h_theta and q1 = int w h_theta must both stay <= 1. For
    m = 0 the parameter is the value of h itself, so theta >= 0 is required
    as well (Theta_0 = [0, 2]).
    """
    h = theta_to_h(param)
    q0, q1 = endpoint_functionals(h)
    ok = q0 <= 1.0 + FEAS_TOL and q1 <= 1.0 + FEAS_TOL
    if param.m == 0:
        ok = ok and param.theta[0] >= -FEAS_TOL
    return Feasibility(bool(ok), q0, q1)


def theta_to_pickands(param: FullModelParam) -> PickandsPoly:
    """Pickands polynomial A_theta of degree m + 2 for feasible theta.

    Raises
    ------
    InfeasibleThetaError
        If theta lies outside Theta_m; the error carries (q0, q1).
    """
    feas = feasibility(param)
    if not feas.feasible:
        raise InfeasibleThetaError(feas.q0, feas.q1)
    return PickandsPoly(a_from_h(theta_to_h(param)))


@lru_cache(maxsize=None)
def _sampling_box(m: int) -> np.ndarray:
    # Tightest axis-aligned box containing E0 cap E1: along axis i each
    # ellipsoid alone reaches sqrt((Q^-1)_ii), and the intersection at most
    # the smaller of the two.
    Q0, Q1 = form_matrices(m)
    ext0 = np.sqrt(np.diag(np.linalg.inv(Q0)))
    ext1 = np.sqrt(np.diag(np.linalg.inv(Q1)))
    return np.minimum(ext0, ext1)


def sample_feasible(m: int, rng: np.random.Generator, count: int, max_batches: int = 40) -> np.ndarray:
    """Draw ``count`` random points spread over Theta_m; rows are draws.

    Rejection sampling from the tightest box around E0 cap E1 (exactly
    uniform) while the acceptance rate supports it; in higher dimensions,
    where box rejection collapses, it falls back to the star-shaped scheme:
    Gaussian direction xi, scaled to the boundary radius
    1/sqrt(max(q0(xi), q1(xi))) and pulled inside by U^(1/(m+1)). The
    fallback covers the whole body including the boundary region, though not
    with exactly uniform measure. Deterministic given the generator state.
    """
    if m == 0:
        return rng.uniform(0.0, 2.0, size=(count, 1))
    Q0, Q1 = form_matrices(m)
    box = _sampling_box(m)
    out = []
    have = 0
    for _ in range(max_batches):
        cand = rng.uniform(-1.0, 1.0, size=(max(8 * count, 2048), m + 1)) * box
        q0 = np.einsum("ri,ij,rj->r", cand, Q0, cand)
        q1 = np.einsum("ri,ij,rj->r", cand, Q1, cand)
        keep = cand[(q0 <= 1.0) & (q1 <= 1.0)]
        if keep.size:
            out.append(keep)
            have += keep.shape[0]
        if have >= count:
            return np.concatenate(out)[:count]
    xi = rng.normal(size=(count - have, m + 1))
    q0 = np.einsum("ri,ij,rj->r", xi, Q0, xi)
    q1 = np.einsum("ri,ij,rj->r", xi, Q1, xi)
    radius = 1.0 / np.sqrt(np.maximum(q0, q1))
    radial = rng.uniform(size=count - have) ** (1.0 / (m + 1))
    out.append(xi * (radius * radial)[:, None])
    return np.concatenate(out)[:count]
