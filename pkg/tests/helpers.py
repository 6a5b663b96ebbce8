"""Shared constants and independent oracles for the test suite.

Everything here is deliberately implemented by a different route than the
library code it checks (quadrature, finite differences, brute force,
rational arithmetic), so oracle and implementation cannot share a bug.
"""

from fractions import Fraction

import numpy as np
from scipy import integrate

from pickpoly import BernsteinPoly, copula_cdf, evaluate

# The quartic model: A = 1 - (83/180)t + t^2 - (7/9)t^3 + (43/180)t^4,
# whose second derivative has Bernstein coefficients [2, -1/3, 1/5].
POLFULL_H = np.array([2.0, -1.0 / 3.0, 0.2])
POLFULL_POWER = np.array([1.0, -83.0 / 180.0, 1.0, -7.0 / 9.0, 43.0 / 180.0])

ALOG_PARAMS = (0.5, 0.1, 0.5)  # (alpha, psi1, psi2) used in the simulation study
MIX_PSI = 0.9


def alog_value(t, alpha, psi1, psi2):
    """Asymmetric logistic A(t), written independently of the library."""
    t = np.asarray(t, dtype=float)
    inner = (psi1 * t) ** (1.0 / alpha) + (psi2 * (1.0 - t)) ** (1.0 / alpha)
    return (1.0 - psi1) * t + (1.0 - psi2) * (1.0 - t) + inner**alpha


def quad_a_from_h(h: BernsteinPoly, t: float) -> float:
    """A(t) = 1 - int_0^1 min{(1-t)w, t(1-w)} h(w) dw by adaptive quadrature.

    The kernel's kink sits at w = t, so the integral is split there.
    """
    left, _ = integrate.quad(lambda w: (1.0 - t) * w * evaluate(h, w), 0.0, t,
                             epsabs=1e-11, limit=200)
    right, _ = integrate.quad(lambda w: t * (1.0 - w) * evaluate(h, w), t, 1.0,
                              epsabs=1e-11, limit=200)
    return 1.0 - left - right


def fd_mixed_partial(A, u: float, v: float, step: float = 1e-4) -> float:
    """Second-order finite-difference mixed partial of the copula cdf."""
    return (
        copula_cdf(A, u + step, v + step)
        - copula_cdf(A, u + step, v - step)
        - copula_cdf(A, u - step, v + step)
        + copula_cdf(A, u - step, v - step)
    ) / (4.0 * step * step)


def lukacs_quadratic_theta(power_coeffs) -> np.ndarray:
    """Brute-force Lukacs decomposition of a positive quadratic on [0,1].

    For h = c + b t + a t^2 with h > 0 on [0,1], solves
    h = (p0 + p1 t)^2 + t(1-t) q^2 by matching coefficients; both branches of
    the quadratic for p1 are tried and the one with q^2 >= 0 wins. Returns
    theta = (P(0), P(1), q) — the m = 2 parameter vector.
    """
    c, b, a = (float(x) for x in power_coeffs)
    if c <= 0 or a + b + c <= 0:
        raise ValueError("expected h(0) > 0 and h(1) > 0")
    p0 = np.sqrt(c)
    best = None
    for sign in (+1.0, -1.0):
        p1 = -p0 + sign * np.sqrt(a + b + c)
        q_sq = b - 2.0 * p0 * p1
        if q_sq >= -1e-12:
            resid = abs(a - (p1 * p1 - max(q_sq, 0.0)))
            if best is None or resid < best[0]:
                best = (resid, p1, max(q_sq, 0.0))
    if best is None:
        raise ValueError("no Lukacs decomposition found")
    _, p1, q_sq = best
    return np.array([p0, p0 + p1, np.sqrt(q_sq)])


def exact_lorentz_degree(coeffs_rational, cap: int = 300):
    """Lorentz degree by exact rational degree elevation (oracle)."""
    c = [Fraction(x) for x in coeffs_rational]
    m = len(c) - 1
    for M in range(m, cap + 1):
        if all(x >= 0 for x in c):
            return M
        nxt = [c[0]]
        deg = len(c) - 1
        for j in range(1, deg + 1):
            w = Fraction(j, deg + 1)
            nxt.append(w * c[j - 1] + (1 - w) * c[j])
        nxt.append(c[-1])
        c = nxt
    return None


def gcm_bruteforce(x: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Greatest convex minorant on a grid via supporting lines, O(n^3)."""
    n = x.size
    out = np.full(n, -np.inf)
    for i in range(n):
        for j in range(i + 1, n):
            slope = (f[j] - f[i]) / (x[j] - x[i])
            line = f[i] + slope * (x - x[i])
            if np.all(line <= f + 1e-12):
                out = np.maximum(out, line)
    return out
