"""Bernstein-basis polynomial algebra on the unit interval.

Everything downstream (dependence functions, spectral densities, the two
parametric models) stores polynomials in the Bernstein basis

    b_{k,m}(x) = C(m,k) x^k (1-x)^(m-k),   k = 0..m,

because the constraints of interest act directly on the coefficients.
Evaluation uses the de Casteljau convex-combination scheme, degree elevation
the single-step averaging identity, and basis changes the exact triangular
recurrences; no least-squares fitting anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln


def binom_pmf(k, n: int, p: float):
    """Binomial pmf P(S_n = k) at success probability p, via log-gamma.

    Stable for n in the thousands. k may be a scalar or array; values
    outside {0,...,n} give 0. p = 0 and p = 1 are handled exactly.
    """
    k = np.asarray(k)
    scalar = k.ndim == 0
    k = np.atleast_1d(k).astype(float)
    out = np.zeros_like(k, dtype=float)
    valid = (k >= 0) & (k <= n) & (k == np.floor(k))
    kv = k[valid]
    if p <= 0.0:
        out[valid] = (kv == 0).astype(float)
    elif p >= 1.0:
        out[valid] = (kv == n).astype(float)
    else:
        logc = gammaln(n + 1) - gammaln(kv + 1) - gammaln(n - kv + 1)
        out[valid] = np.exp(logc + kv * math.log(p) + (n - kv) * math.log1p(-p))
    return float(out[0]) if scalar else out


def basis_eval(k: int, m: int, x) -> float:
    """Evaluate the basis polynomial b_{k,m}(x) = C(m,k) x^k (1-x)^(m-k).

    Raises
    ------
    ValueError
        If k is outside 0..m or x outside [0,1].
    """
    if not 0 <= k <= m:
        raise ValueError(f"basis index k={k} out of range 0..{m}")
    _check_unit_interval(x)
    return _basis_scalar_or_array(k, m, x)


def _basis_scalar_or_array(k: int, m: int, x):
    # pmf at fixed k but varying probability x: direct log computation
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    logc = gammaln(m + 1) - gammaln(k + 1) - gammaln(m - k + 1)
    interior = (x > 0.0) & (x < 1.0)
    xi = x[interior]
    out[interior] = np.exp(logc + k * np.log(xi) + (m - k) * np.log1p(-xi))
    out[x <= 0.0] = 1.0 if k == 0 else 0.0
    out[x >= 1.0] = 1.0 if k == m else 0.0
    return float(out[0]) if scalar else out


def _check_unit_interval(x) -> None:
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0.0) or np.any(xa > 1.0) or not np.all(np.isfinite(xa)):
        raise ValueError("abscissa outside [0,1]")


def _as_coeff_array(coeffs) -> np.ndarray:
    c = np.array(coeffs, dtype=float)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("coefficients must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(c)):
        raise ValueError("coefficients must be finite")
    c.flags.writeable = False
    return c


@dataclass(frozen=True)
class BernsteinPoly:
    """Polynomial on [0,1] stored by its Bernstein coefficients.

    ``coeffs[k]`` is the coefficient of b_{k, degree}; the degree is the
    representation degree (len(coeffs) - 1), which may exceed the natural
    degree after elevation.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeff_array(self.coeffs))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        return evaluate(self, x)


@dataclass(frozen=True)
class PowerPoly:
    """Polynomial stored in the power basis; ``coeffs[k]`` multiplies t**k."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeff_array(self.coeffs))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def natural_degree(self) -> int:
        """Index of the last nonzero coefficient (0 for the zero polynomial)."""
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[-1]) if nz.size else 0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x, dtype=float)
        for c in self.coeffs[::-1]:
            out = out * x + c
        return float(out) if out.ndim == 0 else out


def evaluate(P: BernsteinPoly, x):
    """Evaluate P at x in [0,1] by repeated linear interpolation (de Casteljau).

    Accepts a scalar or an array of abscissae. The convex-combination scheme
    keeps evaluation stable when coefficients sit near feasibility boundaries.
    """
    _check_unit_interval(x)
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xf = np.atleast_1d(xa)
    b = np.broadcast_to(P.coeffs[:, None], (P.coeffs.size, xf.size)).copy()
    for _ in range(P.degree):
        b = b[:-1] + xf * (b[1:] - b[:-1])
    out = b[0]
    return float(out[0]) if scalar else out.reshape(xa.shape)


def eval_with_derivatives(coeffs: np.ndarray, x: np.ndarray):
    """Value, first and second derivative at x from one de Casteljau triangle.

    Internal fast path (no domain checks): x must be an ndarray in [0,1].
    Returns three arrays shaped like x.
    """
    m = coeffs.size - 1
    if m == 0:
        z = np.zeros_like(x)
        return np.full_like(x, coeffs[0]), z, z
    if m == 1:
        z = np.zeros_like(x)
        return coeffs[0] + x * (coeffs[1] - coeffs[0]), np.full_like(x, coeffs[1] - coeffs[0]), z
    b = np.broadcast_to(coeffs[:, None], (m + 1, x.size)).copy()
    for _ in range(m - 2):
        b = b[:-1] + x * (b[1:] - b[:-1])
    d2 = m * (m - 1) * (b[2] - 2.0 * b[1] + b[0])
    b = b[:-1] + x * (b[1:] - b[:-1])
    d1 = m * (b[1] - b[0])
    val = b[0] + x * (b[1] - b[0])
    return val, d1, d2


def derivative_coeffs(P: BernsteinPoly) -> BernsteinPoly:
    """Coefficients of P': c(k, m-1; P') = m * (c(k+1) - c(k)).

    A degree-0 input returns the zero polynomial of degree 0.
    """
    m = P.degree
    if m == 0:
        return BernsteinPoly(np.zeros(1))
    return BernsteinPoly(m * np.diff(P.coeffs))


def second_derivative_coeffs(P: BernsteinPoly) -> BernsteinPoly:
    """Coefficients of P'': c(k, m-2; P'') = m(m-1) * second difference."""
    m = P.degree
    if m < 2:
        return BernsteinPoly(np.zeros(1))
    return BernsteinPoly(m * (m - 1) * np.diff(P.coeffs, n=2))


def _elevate_once(c: np.ndarray) -> np.ndarray:
    # c(j, m+1) = (j/(m+1)) c(j-1, m) + (1 - j/(m+1)) c(j, m)
    m = c.size - 1
    j = np.arange(m + 2) / (m + 1)
    out = np.empty(m + 2)
    out[0] = c[0]
    out[-1] = c[-1]
    out[1:-1] = j[1:-1] * c[:-1] + (1.0 - j[1:-1]) * c[1:]
    return out


def elevate_degree(P: BernsteinPoly, target: int) -> BernsteinPoly:
    """Re-express P in the Bernstein basis of a higher degree.

    Applies the single-step averaging identity target - degree times; values
    on [0,1] are unchanged.

    Raises
    ------
    ValueError
        If target < P.degree.
    """
    if target < P.degree:
        raise ValueError(f"target degree {target} below current degree {P.degree}")
    c = np.asarray(P.coeffs, dtype=float)
    for _ in range(target - P.degree):
        c = _elevate_once(c)
    return BernsteinPoly(c)


def bernstein_approx(f: Callable[[float], float], m: int) -> BernsteinPoly:
    """Bernstein approximation of order m: coefficients are f(k/m).

    Raises
    ------
    ValueError
        If f is non-finite at a grid point, or m < 1.
    """
    if m < 1:
        raise ValueError("approximation order must be >= 1")
    grid = np.arange(m + 1) / m
    try:
        vals = np.asarray(f(grid), dtype=float)
        if vals.shape != grid.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([float(f(g)) for g in grid])
    if not np.all(np.isfinite(vals)):
        raise ValueError("function returned a non-finite value at a grid point")
    return BernsteinPoly(vals)


def power_to_bernstein(P: PowerPoly, m: int | None = None) -> BernsteinPoly:
    """Exact basis change from power to Bernstein coefficients.

    c(k, m) = sum_{j<=k} [C(k,j)/C(m,j)] a_j, with exact integer binomials.
    m defaults to the natural degree.

    Raises
    ------
    ValueError
        If m is below the natural degree of P.
    """
    nat = P.natural_degree()
    if m is None:
        m = nat
    if m < nat:
        raise ValueError(f"requested degree {m} below natural degree {nat}")
    a = P.coeffs
    c = np.empty(m + 1)
    for k in range(m + 1):
        acc = 0.0
        for j in range(0, min(k, a.size - 1) + 1):
            acc += (math.comb(k, j) / math.comb(m, j)) * a[j]
        c[k] = acc
    return BernsteinPoly(c)


def bernstein_to_power(P: BernsteinPoly) -> PowerPoly:
    """Exact basis change from Bernstein to power coefficients.

    a_j = C(m,j) * sum_{k<=j} (-1)^(j-k) C(j,k) c_k.
    """
    m = P.degree
    c = P.coeffs
    a = np.empty(m + 1)
    for j in range(m + 1):
        acc = 0.0
        for k in range(j + 1):
            term = math.comb(j, k) * c[k]
            acc += term if (j - k) % 2 == 0 else -term
        a[j] = math.comb(m, j) * acc
    return PowerPoly(a)


def decasteljau_split(coeffs: np.ndarray):
    """Split Bernstein coefficients at x = 1/2 into left/right halves."""
    c = np.asarray(coeffs, dtype=float).copy()
    n = c.size
    left = np.empty(n)
    right = np.empty(n)
    left[0] = c[0]
    right[-1] = c[-1]
    for r in range(1, n):
        c = 0.5 * (c[:-1] + c[1:])
        left[r] = c[0]
        right[n - 1 - r] = c[-1]
    return left, right


def global_minimum(P: BernsteinPoly, xtol: float = 1e-10):
    """Locate the global minimum of P on [0,1] by Bernstein branch-and-bound.

    The minimum coefficient on a subinterval bounds the polynomial below
    there, so subintervals whose bound cannot beat the incumbent are pruned.
    Returns (abscissa, value) with the abscissa localized to xtol.
    """
    deg = P.degree
    if deg == 0:
        return 0.0, float(P.coeffs[0])
    best_t, best_v = 0.0, float(P.coeffs[0])
    if P.coeffs[-1] < best_v:
        best_t, best_v = 1.0, float(P.coeffs[-1])
    nodes = [(0.0, 1.0, P.coeffs)]
    while nodes:
        nxt = []
        for a, b, c in nodes:
            k = int(np.argmin(c))
            if c[k] >= best_v:
                continue
            probe = a + (b - a) * k / deg
            v = evaluate(P, probe)
            if v < best_v:
                best_t, best_v = probe, v
            if b - a <= xtol:
                continue
            left, right = decasteljau_split(c)
            mid = 0.5 * (a + b)
            if left[-1] < best_v:
                best_t, best_v = mid, float(left[-1])
            nxt.append((a, mid, left))
            nxt.append((mid, b, right))
        nodes = nxt
    return best_t, best_v


# Repo-wide polynomial JSON schema: {"basis": "bernstein"|"power",
#                                    "degree": m, "coeffs": [...]}

def poly_to_json(P: BernsteinPoly | PowerPoly) -> dict:
    basis = "bernstein" if isinstance(P, BernsteinPoly) else "power"
    return {"basis": basis, "degree": P.degree, "coeffs": [float(c) for c in P.coeffs]}


def poly_from_json(obj: dict) -> BernsteinPoly | PowerPoly:
    """Parse the repo-wide polynomial schema; validates degree consistency."""
    try:
        basis = obj["basis"]
        degree = obj["degree"]
        coeffs = obj["coeffs"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"polynomial JSON missing field: {exc}") from exc
    if not isinstance(coeffs, (list, tuple)) or len(coeffs) != degree + 1:
        raise ValueError("polynomial JSON: coeffs length must equal degree + 1")
    if basis == "bernstein":
        return BernsteinPoly(coeffs)
    if basis == "power":
        return PowerPoly(coeffs)
    raise ValueError(f"polynomial JSON: unknown basis {basis!r}")
