"""Pickands dependence functions and their spectral densities.

A Pickands function A on [0,1] is convex with max(t, 1-t) <= A(t) <= 1 and
characterizes a bivariate extreme-value copula through

    C_A(u, v) = exp{ log(uv) * A(log v / log uv) }.

For polynomials with absolutely continuous derivative the whole object is
determined by the nonnegative polynomial h = A'' together with the two
endpoint-derivative functionals int (1-w) h and int w h (both <= 1); the atom
masses of the spectral measure at 0 and 1 are one minus those functionals.
This module implements the validation of polynomial Pickands functions, a
certified nonnegativity decision procedure, the coefficient maps h <-> A,
spectral-measure reconstruction, and copula cdf/density evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np

from .bernstein import (
    BernsteinPoly,
    decasteljau_split,
    derivative_coeffs,
    evaluate,
    second_derivative_coeffs,
)


class CertificateInconclusiveError(RuntimeError):
    """Subdivision certificate hit max depth without deciding the sign."""


class NotSpectralDensityError(ValueError):
    """Nonnegative polynomial whose endpoint-derivative functional exceeds 1."""

    def __init__(self, which: str, value: float):
        self.which = which
        self.value = value
        super().__init__(f"endpoint-derivative condition violated: {which} = {value!r} > 1")


def vee(t):
    """Comonotone lower bound V(t) = max(1 - t, t)."""
    t = np.asarray(t, dtype=float)
    out = np.maximum(1.0 - t, t)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class NonnegReport:
    nonneg: bool
    witness: float | None
    subdivisions: int


def certify_nonnegative(P: BernsteinPoly, tol: float = 1e-12, max_depth: int = 60) -> NonnegReport:
    """Decide sign of P on [0,1] by de Casteljau subdivision.

    Returns nonneg=True only when every leaf interval carries coefficients
    >= -tol (a certificate), and nonneg=False with an abscissa where
    P < -tol. If the certificate cannot decide by ``max_depth`` (a zero of
    even multiplicity sitting at the tolerance boundary) it raises
    CertificateInconclusiveError rather than guessing.
    """
    deg = P.degree
    stack = [(0.0, 1.0, P.coeffs, 0)]
    subdivisions = 0
    while stack:
        a, b, c, depth = stack.pop()
        k = int(np.argmin(c))
        if c[k] >= -tol:
            continue
        probe = a + (b - a) * (k / deg if deg else 0.5)
        if evaluate(P, probe) < -tol:
            return NonnegReport(False, probe, subdivisions)
        mid = 0.5 * (a + b)
        if evaluate(P, mid) < -tol:
            return NonnegReport(False, mid, subdivisions)
        if depth >= max_depth:
            raise CertificateInconclusiveError(
                f"sign of polynomial undecided on [{a}, {b}] at depth {depth}"
            )
        left, right = decasteljau_split(c)
        subdivisions += 1
        stack.append((a, mid, left, depth + 1))
        stack.append((mid, b, right, depth + 1))
    return NonnegReport(True, None, subdivisions)


def validate_pickands(P: BernsteinPoly, endpoint_tol: float = 1e-9) -> dict:
    """Classify a Bernstein polynomial as Pickands function or not.

    Checks the endpoint conditions on the first/last two coefficients and
    convexity through a certified sign decision on A''. Never raises: every
    input is classified, and failed rules come with a witness (coefficient
    index or abscissa).
    """
    c = P.coeffs
    m2 = P.degree
    violations: list[dict] = []
    if m2 < 2:
        for k in range(m2 + 1):
            if abs(c[k] - 1.0) > endpoint_tol:
                violations.append({"rule": "endpoint_value", "witness": k})
        return {"valid": not violations, "violations": violations}
    if abs(c[0] - 1.0) > endpoint_tol:
        violations.append({"rule": "endpoint_value", "witness": 0})
    if abs(c[m2] - 1.0) > endpoint_tol:
        violations.append({"rule": "endpoint_value", "witness": m2})
    floor = (m2 - 1) / m2  # (m+1)/(m+2) with representation degree m2 = m+2
    if c[1] < floor - 1e-12:
        violations.append({"rule": "endpoint_derivative", "witness": 1})
    if m2 - 1 != 1 and c[m2 - 1] < floor - 1e-12:
        violations.append({"rule": "endpoint_derivative", "witness": m2 - 1})
    try:
        report = certify_nonnegative(second_derivative_coeffs(P))
        if not report.nonneg:
            violations.append({"rule": "convexity", "witness": report.witness})
    except CertificateInconclusiveError:
        violations.append({"rule": "convexity_inconclusive", "witness": None})
    return {"valid": not violations, "violations": violations}


@dataclass(frozen=True)
class PickandsPoly:
    """Validated polynomial Pickands function of degree m + 2.

    Construction snaps the endpoint coefficients to exactly 1 when they are
    within 1e-9 (downstream formulas assume exact endpoint values) and
    rejects anything that fails the endpoint or convexity conditions.
    """

    poly: BernsteinPoly

    def __post_init__(self):
        c = self.poly.coeffs.copy()
        if c.size < 3:
            raise ValueError("PickandsPoly needs degree >= 2; A == 1 is degree-2 [1,1,1]")
        for k in (0, c.size - 1):
            if abs(c[k] - 1.0) > 1e-9:
                raise ValueError(f"endpoint coefficient {k} = {c[k]!r} not 1")
            c[k] = 1.0
        snapped = BernsteinPoly(c)
        report = validate_pickands(snapped)
        if not report["valid"]:
            raise ValueError(f"not a Pickands function: {report['violations']}")
        object.__setattr__(self, "poly", snapped)

    @property
    def m(self) -> int:
        return self.poly.degree - 2

    @cached_property
    def _d1(self) -> BernsteinPoly:
        return derivative_coeffs(self.poly)

    @cached_property
    def _d2(self) -> BernsteinPoly:
        return second_derivative_coeffs(self.poly)

    def value(self, t):
        return evaluate(self.poly, t)

    def deriv(self, t):
        return evaluate(self._d1, t)

    def deriv2(self, t):
        return evaluate(self._d2, t)


def _call_vec(f: Callable, t: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(f(t), dtype=float)
        if out.shape == t.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([float(f(x)) for x in t])


@dataclass(frozen=True)
class GenericPickands:
    """Pickands function given by callables (A, A', A'') plus a tag.

    Used for non-polynomial models (e.g. the asymmetric logistic family).
    Construction checks A(0) = A(1) = 1 and V <= A <= 1 on a 1001-point grid
    to 1e-12. Derivative callables are only required on the open interval.
    """

    a: Callable
    da: Callable
    d2a: Callable
    tag: str = ""

    def __post_init__(self):
        grid = np.linspace(0.0, 1.0, 1001)
        vals = _call_vec(self.a, grid)
        if abs(vals[0] - 1.0) > 1e-12 or abs(vals[-1] - 1.0) > 1e-12:
            raise ValueError("A(0) and A(1) must equal 1")
        if np.any(vals > 1.0 + 1e-12) or np.any(vals < vee(grid) - 1e-12):
            bad = grid[int(np.argmax(np.maximum(vals - 1.0, vee(grid) - vals)))]
            raise ValueError(f"boundary conditions V <= A <= 1 violated near t = {bad}")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        out = _call_vec(self.a, np.atleast_1d(t))
        return float(out[0]) if t.ndim == 0 else out

    def deriv(self, t):
        t = np.asarray(t, dtype=float)
        out = _call_vec(self.da, np.atleast_1d(t))
        return float(out[0]) if t.ndim == 0 else out

    def deriv2(self, t):
        t = np.asarray(t, dtype=float)
        out = _call_vec(self.d2a, np.atleast_1d(t))
        return float(out[0]) if t.ndim == 0 else out


def comonotone() -> GenericPickands:
    """The comonotone Pickands function A = V (copula min(u, v))."""
    return GenericPickands(
        a=vee,
        da=lambda t: np.where(np.asarray(t, dtype=float) < 0.5, -1.0, 1.0),
        d2a=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        tag="comonotone",
    )


def independence() -> GenericPickands:
    """The independence Pickands function A == 1 (copula u*v)."""
    return GenericPickands(
        a=lambda t: np.ones_like(np.asarray(t, dtype=float)),
        da=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        d2a=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        tag="independence",
    )


@lru_cache(maxsize=None)
def a_from_h_matrix(m: int) -> np.ndarray:
    """Kernel matrix K with A-coeffs = 1 - (K @ h-coeffs) / (m + 1).

    K[k, j] = min{(1 - k/(m+2)) (j+1)/(m+2), (k/(m+2)) (1 - (j+1)/(m+2))},
    k = 0..m+2, j = 0..m.
    """
    k = np.arange(m + 3)[:, None] / (m + 2)
    y = (np.arange(m + 1)[None, :] + 1.0) / (m + 2)
    K = np.minimum((1.0 - k) * y, k * (1.0 - y))
    K.flags.writeable = False
    return K


def a_from_h(h: BernsteinPoly) -> BernsteinPoly:
    """Map a spectral-density polynomial h (degree m) to A (degree m + 2).

    Coefficientwise realization of A(t) = 1 - int min{(1-t)w, t(1-w)} h(w) dw;
    the first and last output coefficients are exactly 1.
    """
    m = h.degree
    a = 1.0 - (a_from_h_matrix(m) @ h.coeffs) / (m + 1)
    a[0] = 1.0
    a[-1] = 1.0
    return BernsteinPoly(a)


def h_from_a(A: BernsteinPoly) -> BernsteinPoly:
    """Inverse map: h = A'' in Bernstein form, degree m = deg(A) - 2.

    Round trip a_from_h(h_from_a(A)) reproduces A exactly whenever
    A(0) = A(1) = 1.
    """
    if A.degree < 2:
        raise ValueError("h_from_a needs degree >= 2")
    return second_derivative_coeffs(A)


def endpoint_functionals(h: BernsteinPoly) -> tuple[float, float]:
    """(int (1-w) h, int w h) via the exact Bernstein coefficient sums.

    These equal -A'(0) and A'(1) of the associated Pickands function.
    """
    m = h.degree
    y = (np.arange(m + 1) + 1.0) / (m + 2)
    q0 = float(np.dot(1.0 - y, h.coeffs) / (m + 1))
    q1 = float(np.dot(y, h.coeffs) / (m + 1))
    return q0, q1


@dataclass(frozen=True)
class SpectralDensity:
    """Spectral measure h0*delta_0 + h(w) dw + h1*delta_1 of a Pickands polynomial."""

    h: BernsteinPoly
    left_deriv: float   # -A'(0) = int (1-w) h
    right_deriv: float  # A'(1) = int w h
    mass0: float        # H({0}) = 1 - int (1-w) h
    mass1: float        # H({1}) = 1 - int w h


def spectral_measure(h: BernsteinPoly) -> SpectralDensity:
    """Build the spectral measure of a nonnegative polynomial density h.

    Raises
    ------
    ValueError
        If h is negative somewhere on [0,1].
    NotSpectralDensityError
        If an endpoint-derivative functional exceeds 1 (beyond 1e-12).
    """
    report = certify_nonnegative(h)
    if not report.nonneg:
        raise ValueError(f"h is negative near t = {report.witness}")
    q0, q1 = endpoint_functionals(h)
    if q0 > 1.0 + 1e-12:
        raise NotSpectralDensityError("int (1-w) h", q0)
    if q1 > 1.0 + 1e-12:
        raise NotSpectralDensityError("int w h", q1)
    return SpectralDensity(
        h=h,
        left_deriv=q0,
        right_deriv=q1,
        mass0=min(max(1.0 - q0, 0.0), 1.0),
        mass1=min(max(1.0 - q1, 0.0), 1.0),
    )


def _check_in(u, lo: float, hi: float, name: str):
    ua = np.asarray(u, dtype=float)
    if np.any(ua < lo) or np.any(ua > hi) or not np.all(np.isfinite(ua)):
        raise ValueError(f"{name} must lie in [{lo}, {hi}]")
    return ua


def copula_cdf(A, u, v):
    """Extreme-value copula C_A(u, v) = exp{log(uv) A(log v / log uv)}.

    A is a PickandsPoly or GenericPickands. u, v may be scalars or arrays in
    [0,1]; zero arguments return 0 (continuous extension), and the removable
    singularity at u = v = 1 uses t = 1/2 (the value does not depend on it).
    """
    ua = _check_in(u, 0.0, 1.0, "u")
    va = _check_in(v, 0.0, 1.0, "v")
    scalar = ua.ndim == 0 and va.ndim == 0
    ua, va = np.atleast_1d(ua), np.atleast_1d(va)
    ua, va = np.broadcast_arrays(ua, va)
    out = np.zeros(ua.shape)
    zero = (ua == 0.0) | (va == 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.log(ua) + np.log(va)
        t = np.where(s < 0.0, np.log(va) / np.where(s < 0.0, s, -1.0), 0.5)
    live = ~zero
    out[live & (s == 0.0)] = 1.0
    inner = live & (s < 0.0)
    if np.any(inner):
        out[inner] = np.exp(s[inner] * A.value(t[inner]))
    return float(out[0]) if scalar else out


def copula_density(A, u, v):
    """Copula density d2 C_A / du dv on the open square.

    With s = log(uv) and t = log v / s the closed form is

        c(u, v) = exp{s (A - 1)} [ {A + (1-t) A'} {A - t A'} - t(1-t) A'' / s ].

    Raises
    ------
    ValueError
        If u or v sits on the boundary {0, 1}.
    """
    ua = _check_in(u, 0.0, 1.0, "u")
    va = _check_in(v, 0.0, 1.0, "v")
    if np.any(ua <= 0.0) or np.any(ua >= 1.0) or np.any(va <= 0.0) or np.any(va >= 1.0):
        raise ValueError("density requires u, v strictly inside (0, 1)")
    scalar = ua.ndim == 0 and va.ndim == 0
    ua, va = np.broadcast_arrays(np.atleast_1d(ua), np.atleast_1d(va))
    s = np.log(ua) + np.log(va)
    t = np.log(va) / s
    a, d1, d2 = A.value(t), A.deriv(t), A.deriv2(t)
    brace = (a + (1.0 - t) * d1) * (a - t * d1) - t * (1.0 - t) * d2 / s
    out = np.exp(s * (a - 1.0)) * brace
    return float(out[0]) if scalar else out
