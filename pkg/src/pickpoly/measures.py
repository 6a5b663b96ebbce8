"""Dependence measures and Bernstein approximation error bounds.

tau1(A) = 2{1 - A(1/2)} and tau2(A) = 4{1 - int_0^1 A} both vanish at
independence and reach 1 at comonotonicity. Over the submodel of degree m
their ranges are [0, tau_i{B_m(V,.)}], and the approximation error of the
Bernstein operator is controlled by a binomial pmf factor of order
m^(-1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .bernstein import bernstein_approx, binom_pmf, evaluate
from .pickands import GenericPickands, PickandsPoly, vee


@dataclass(frozen=True)
class DependenceReport:
    """Pair (tau1, tau2) with 0 <= tau1 <= tau2 <= 1."""

    tau1: float
    tau2: float

    def __post_init__(self):
        if not (-1e-9 <= self.tau1 <= self.tau2 + 1e-9 <= 1.0 + 2e-9):
            raise ValueError(f"dependence measures out of order: {self}")

    def to_json(self) -> dict:
        return {"tau1": self.tau1, "tau2": self.tau2}


def tau_measures(A: PickandsPoly | GenericPickands) -> DependenceReport:
    """Compute (tau1, tau2) for a valid Pickands function.

    For polynomials the integral in tau2 is the coefficient mean (each basis
    polynomial integrates to 1/(degree+1)); for generic functions adaptive
    quadrature at 1e-10 absolute tolerance is used.
    """
    tau1 = 2.0 * (1.0 - A.value(0.5))
    if isinstance(A, PickandsPoly):
        integral = float(np.mean(A.poly.coeffs))
    else:
        integral, _ = integrate.quad(lambda t: float(A.value(t)), 0.0, 1.0,
                                     epsabs=1e-10, limit=200)
    tau2 = 4.0 * (1.0 - integral)
    return DependenceReport(max(tau1, 0.0), max(tau2, 0.0))


def submodel_tau_range(m: int, which: int) -> float:
    """Upper endpoint of tau_which over the degree-m submodel.

    tau2 endpoint: floor(m/2) / (floor(m/2) + 1/2).
    tau1 endpoint: 1 - binomial pmf at floor(m/2) with m-1 trials; the pmf's
    success probability is taken as 1/2 since tau1 evaluates A at 1/2.
    """
    if m < 1:
        raise ValueError("submodel range needs m >= 1")
    half = m // 2
    if which == 2:
        return half / (half + 0.5)
    if which == 1:
        return 1.0 - binom_pmf(half, m - 1, 0.5)
    raise ValueError("which must be 1 or 2")


@dataclass(frozen=True)
class ApproxBound:
    error: float
    bound: float
    v_bound: float | None = None


def approx_error_bound(A: GenericPickands, m: int, t: float) -> ApproxBound:
    """Bernstein approximation error B_m(A,t) - A(t) and its pmf bound.

    The error is nonnegative (Jensen) and bounded by
    2t(1-t) P_t(S_{m-1} = floor(mt)). For the comonotone function V
    (tag "comonotone") the finer bound {1 - V(t)} P_t(S_{m-1} = floor(m/2))
    is also reported; both bounds are attained at t = 1/2.
    """
    if m < 1:
        raise ValueError("approximation order must be >= 1")
    B = bernstein_approx(A.value, m)
    error = float(evaluate(B, t) - A.value(t))
    bound = float(2.0 * t * (1.0 - t) * binom_pmf(math.floor(m * t), m - 1, t))
    v_bound = None
    if A.tag == "comonotone":
        v_bound = float((1.0 - vee(t)) * binom_pmf(m // 2, m - 1, t))
    return ApproxBound(error, bound, v_bound)
